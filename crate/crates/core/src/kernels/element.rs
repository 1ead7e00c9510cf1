use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::monomial::format_monomial;
use crate::algebra::{NormalMonomial, PolElement, Shape};
use crate::error::{Error, Result};
use crate::scalars::Coeff;

/// `z^E ⊗ (z^F)*` written with both legs in normal form: the left leg is
/// holomorphic and the right leg antiholomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KernelMonomial {
    pub left: NormalMonomial,
    pub right: NormalMonomial,
}

impl KernelMonomial {
    pub fn new(left: NormalMonomial, right: NormalMonomial) -> Result<Self> {
        if !left.is_holomorphic() || !right.is_antiholomorphic() {
            return Err(Error::InvalidParameter("kernel legs must be holomorphic ⊗ antiholomorphic".into()));
        }
        Ok(KernelMonomial { left, right })
    }

    pub fn one(shape: &Shape) -> Self {
        KernelMonomial { left: NormalMonomial::one(shape), right: NormalMonomial::one(shape) }
    }

    /// `(i, j)` such that the monomial has bidegree `(i, −j)`.
    pub fn bidegree(&self) -> (u32, u32) {
        (self.left.z_part_degree(), self.right.star_part_degree())
    }
}

/// A finite sum of kernel monomials. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct KernelElement<C> {
    shape: Shape,
    terms: BTreeMap<KernelMonomial, C>,
}

impl<C: Coeff> KernelElement<C> {
    pub fn zero(shape: Shape) -> Self {
        KernelElement { shape, terms: BTreeMap::new() }
    }

    pub fn one(shape: Shape) -> Self {
        let mut k = KernelElement::zero(shape);
        k.add_term(KernelMonomial::one(&shape), C::one());
        k
    }

    /// `Σ c_E c'_F z^E ⊗ (z^F)*` from a holomorphic and an antiholomorphic element.
    pub fn tensor<S: Coeff>(left: &PolElement<S>, right: &PolElement<S>) -> Result<Self>
    where
        C: From<S>,
    {
        let mut k = KernelElement::zero(left.shape());
        for (l, cl) in left.terms() {
            for (r, cr) in right.terms() {
                k.add_term(KernelMonomial::new(l.clone(), r.clone())?, C::from(cl.clone() * cr.clone()));
            }
        }
        Ok(k)
    }

    pub fn from_terms(shape: Shape, terms: impl IntoIterator<Item = (KernelMonomial, C)>) -> Self {
        let mut k = KernelElement::zero(shape);
        for (m, c) in terms {
            k.add_term(m, c);
        }
        k
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn add_term(&mut self, m: KernelMonomial, c: C) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&KernelMonomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &KernelMonomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
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

    pub fn scale(&self, c: &C) -> Self {
        KernelElement::from_terms(self.shape, self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())))
    }

    pub fn map_coeffs<T: Coeff>(&self, f: impl Fn(&C) -> T) -> KernelElement<T> {
        KernelElement::from_terms(self.shape, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn try_map_coeffs<T: Coeff>(&self, f: impl Fn(&C) -> Result<T>) -> Result<KernelElement<T>> {
        let mut out = KernelElement::zero(self.shape);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Bidegrees present.
    pub fn bidegrees(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<_> = self.terms.keys().map(KernelMonomial::bidegree).collect();
        v.dedup();
        v.sort();
        v.dedup();
        v
    }
}

impl<C: Coeff> fmt::Debug for KernelElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                format!(
                    "[{}]·{}⊗{}",
                    c.to_text(),
                    format_monomial(&self.shape, &m.left),
                    format_monomial(&self.shape, &m.right)
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
