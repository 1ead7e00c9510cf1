//! The *-algebra `Pol(Mat_mn)_q`.
//!
//! Elements are kept in PBW normal form: holomorphic generators in canonical
//! order (column `a` ascending, then row `α` ascending), followed by starred
//! generators in the same order. The quadratic relations are compiled into a
//! two-letter rule table ([`relations`]); products of normal monomials are
//! computed by inserting letters one at a time with a memo table keyed by
//! `(letter, monomial)`.
//!
//! [`Algebra::normal_form_with`] runs the same rule table as a plain string
//! rewriting system with a chosen redex strategy, which is what the
//! confluence checks compare against.

mod element;
mod laurent;
pub mod minors;
pub mod monomial;
pub mod relations;
mod rewrite;
mod shape;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub use element::PolElement;
pub use laurent::Laurent;
pub use monomial::{Generator, NormalMonomial, Word};
pub use rewrite::Strategy;
pub use shape::{Shape, MAX_GENERATORS};

use crate::error::{Error, Result};
use crate::scalars::{check_q, Coeff, QFun, Rational};

type Terms<S> = Arc<[(NormalMonomial, S)]>;

/// `Pol(Mat_mn)_q` over a coefficient ring `S` in which `q` has been fixed.
pub struct Algebra<S> {
    shape: Shape,
    q: S,
    q_inv: S,
    rules: HashMap<(Generator, Generator), Vec<(Word, S)>>,
    letter_cache: Mutex<HashMap<(Generator, NormalMonomial), Terms<S>>>,
}

impl Algebra<QFun> {
    /// Coefficients in `ℚ(q)` with `q` formal.
    pub fn formal(shape: Shape) -> Self {
        Algebra::with_q(shape, QFun::q(), QFun::q_pow(-1))
    }
}

impl Algebra<Rational> {
    /// Coefficients in `ℚ` with `q` substituted; requires `0 < q < 1`.
    pub fn numeric(shape: Shape, q: Rational) -> Result<Self> {
        check_q(&q)?;
        let q_inv = q.recip();
        Ok(Algebra::with_q(shape, q, q_inv))
    }

    /// The commutative specialization `q = 1`, reserved for the classical
    /// limit checks. Not a point of the deformation family.
    #[doc(hidden)]
    pub fn classical_specialization(shape: Shape) -> Self {
        Algebra::with_q(shape, Rational::from_integer(1.into()), Rational::from_integer(1.into()))
    }
}

impl Algebra<f64> {
    pub fn float(shape: Shape, q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParameter(format!("q must lie in (0,1), got {q}")));
        }
        Ok(Algebra::with_q(shape, q, 1.0 / q))
    }
}

impl<S: Coeff> Algebra<S> {
    pub(crate) fn with_q(shape: Shape, q: S, q_inv: S) -> Self {
        let rules = relations::rule_table(&shape)
            .into_iter()
            .map(|(k, rhs)| {
                let rhs = rhs.into_iter().map(|(w, c)| (w, c.instantiate(&q, &q_inv))).collect();
                (k, rhs)
            })
            .collect();
        Algebra { shape, q, q_inv, rules, letter_cache: Mutex::new(HashMap::new()) }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn q_inv(&self) -> &S {
        &self.q_inv
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(&self, k: i64) -> S {
        let base = if k >= 0 { &self.q } else { &self.q_inv };
        let mut acc = S::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc * base.clone();
        }
        acc
    }

    /// Right-hand side of the rule for the redex `x y`, if it is one.
    pub fn rule(&self, x: Generator, y: Generator) -> Option<&[(Word, S)]> {
        self.rules.get(&(x, y)).map(Vec::as_slice)
    }

    pub fn one(&self) -> PolElement<S> {
        PolElement::one(self.shape)
    }

    pub fn constant(&self, c: S) -> PolElement<S> {
        PolElement::constant(self.shape, c)
    }

    pub fn generator(&self, g: Generator) -> Result<PolElement<S>> {
        g.check(&self.shape)?;
        Ok(PolElement::monomial(self.shape, NormalMonomial::generator(&self.shape, g), S::one()))
    }

    pub fn check_word(&self, w: &[Generator]) -> Result<()> {
        w.iter().try_for_each(|g| g.check(&self.shape))
    }

    /// Normal form of `g · m`.
    pub fn left_mul_letter(&self, g: Generator, m: &NormalMonomial) -> Terms<S> {
        let key = (g, m.clone());
        if let Some(hit) = self.letter_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let result: Terms<S> = self.compute_left_mul(g, m).into_terms().collect::<Vec<_>>().into();
        self.letter_cache.lock().unwrap().insert(key, result.clone());
        result
    }

    fn compute_left_mul(&self, g: Generator, m: &NormalMonomial) -> PolElement<S> {
        let idx = self.shape.index(g.alpha, g.a);
        let adjacent = if g.starred {
            match m.first_z() {
                Some(i) => Some((i, false)),
                None => m.first_star().map(|i| (i, true)),
            }
        } else {
            m.first_z().map(|i| (i, false))
        };
        let sorted_prepend = |mut m: NormalMonomial| {
            if g.starred {
                m.f[idx] += 1;
            } else {
                m.e[idx] += 1;
            }
            PolElement::monomial(self.shape, m, S::one())
        };
        let Some((hi, h_starred)) = adjacent else {
            return sorted_prepend(m.clone());
        };
        let (alpha, a) = self.shape.position(hi);
        let h = Generator { alpha, a, starred: h_starred };
        if !relations::is_redex(&g, &h) {
            return sorted_prepend(m.clone());
        }
        let mut rest = m.clone();
        if h_starred {
            rest.f[hi] -= 1;
        } else {
            rest.e[hi] -= 1;
        }
        let mut out = PolElement::zero(self.shape);
        for (word, c) in self.rule(g, h).expect("redex without rule") {
            let mut acc = PolElement::monomial(self.shape, rest.clone(), c.clone());
            for &letter in word.iter().rev() {
                acc = self.left_mul_letter_poly(letter, &acc);
            }
            out = out.add(&acc);
        }
        out
    }

    fn left_mul_letter_poly(&self, g: Generator, p: &PolElement<S>) -> PolElement<S> {
        let mut out = PolElement::zero(self.shape);
        for (m, c) in p.terms() {
            for (m2, c2) in self.left_mul_letter(g, m).iter() {
                out.add_term(m2.clone(), c.clone() * c2.clone());
            }
        }
        out
    }

    /// Normal form of the product of two normal monomials.
    pub fn mul_monomials(&self, x: &NormalMonomial, y: &NormalMonomial) -> PolElement<S> {
        let mut acc = PolElement::monomial(self.shape, y.clone(), S::one());
        for g in x.word(&self.shape).into_iter().rev() {
            acc = self.left_mul_letter_poly(g, &acc);
        }
        acc
    }

    /// Normal form of a word of generators.
    pub fn normal_form(&self, w: &[Generator]) -> Result<PolElement<S>> {
        self.check_word(w)?;
        let mut acc = self.one();
        for &g in w.iter().rev() {
            acc = self.left_mul_letter_poly(g, &acc);
        }
        Ok(acc)
    }

    pub fn multiply(&self, p: &PolElement<S>, r: &PolElement<S>) -> Result<PolElement<S>> {
        if p.shape() != self.shape || r.shape() != self.shape {
            return Err(Error::ShapeMismatch);
        }
        let mut out = PolElement::zero(self.shape);
        for (x, cx) in p.terms() {
            for (y, cy) in r.terms() {
                let c = cx.clone() * cy.clone();
                for (m, cm) in self.mul_monomials(x, y).into_terms() {
                    out.add_term(m, c.clone() * cm);
                }
            }
        }
        Ok(out)
    }

    /// The involution; `q` is real, so coefficients are fixed.
    pub fn star(&self, p: &PolElement<S>) -> PolElement<S> {
        let mut out = PolElement::zero(self.shape);
        for (m, c) in p.terms() {
            let adj: Word = m.word(&self.shape).into_iter().rev().map(Generator::star).collect();
            let nf = self.normal_form(&adj).expect("indices already validated");
            for (m2, c2) in nf.into_terms() {
                out.add_term(m2, c.clone() * c2);
            }
        }
        out
    }

    pub fn pow(&self, p: &PolElement<S>, k: u32) -> Result<PolElement<S>> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.multiply(&acc, p)?;
        }
        Ok(acc)
    }

    pub fn cache_len(&self) -> usize {
        self.letter_cache.lock().unwrap().len()
    }
}
