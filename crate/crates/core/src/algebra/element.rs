use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::monomial::{format_monomial, NormalMonomial};
use super::shape::Shape;
use crate::scalars::Coeff;

/// A finite linear combination of PBW monomials. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq)]
pub struct PolElement<S> {
    shape: Shape,
    terms: BTreeMap<NormalMonomial, S>,
}

impl<S: Coeff> PolElement<S> {
    pub fn zero(shape: Shape) -> Self {
        PolElement { shape, terms: BTreeMap::new() }
    }

    pub fn constant(shape: Shape, c: S) -> Self {
        let mut p = PolElement::zero(shape);
        p.add_term(NormalMonomial::one(&shape), c);
        p
    }

    pub fn one(shape: Shape) -> Self {
        PolElement::constant(shape, S::one())
    }

    pub fn monomial(shape: Shape, m: NormalMonomial, c: S) -> Self {
        let mut p = PolElement::zero(shape);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(shape: Shape, terms: impl IntoIterator<Item = (NormalMonomial, S)>) -> Self {
        let mut p = PolElement::zero(shape);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn add_term(&mut self, m: NormalMonomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                let v = slot.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *slot = v;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalMonomial, &S)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (NormalMonomial, S)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &NormalMonomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        PolElement::from_terms(self.shape, self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    /// `(Z-degree, total degree)` pairs of the monomials present.
    pub fn z_degrees(&self) -> BTreeSet<(i64, u32)> {
        self.terms.keys().map(|m| (m.z_degree(), m.total_degree())).collect()
    }

    /// Apply a coefficient map, e.g. to evaluate at a numeric `q`.
    pub fn map_coeffs<T: Coeff>(&self, f: impl Fn(&S) -> T) -> PolElement<T> {
        PolElement::from_terms(self.shape, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

impl<S: Coeff> fmt::Debug for PolElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(m, c)| format!("[{}]·{}", c.to_text(), format_monomial(&self.shape, m))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
