//! The Fock representation on `H = ℂ[Mat]_q f0`, its scalar product, the
//! weight operator and the (weighted) integrals built from traces on `H`.
//!
//! Vectors `p f0` are stored by the holomorphic polynomial `p`. Creation
//! operators act by holomorphic left multiplication. An annihilator
//! `(z_g)*` is pushed through the leading letter of `z^E` with the mixed
//! relation and recurses on the rest; the vacuum kills what reaches it.

mod block;
mod integral;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub use block::{class_of, degree_basis, ty_power_block, ty_power_block_float, Class, DegreeBlock};
pub use integral::{c_lambda, c_lambda_formal, gram_basis, GramMatrix, IntegralParams, Truncated};

use crate::algebra::{Algebra, Generator, NormalMonomial, PolElement, Shape};
use crate::error::{Error, Result};
use crate::scalars::Coeff;

/// A vector `p f0` of the Fock space, held as the holomorphic `p`.
#[derive(Clone, PartialEq)]
pub struct HVector<S>(PolElement<S>);

impl<S: Coeff> HVector<S> {
    pub fn zero(shape: Shape) -> Self {
        HVector(PolElement::zero(shape))
    }

    /// `f0` itself.
    pub fn vacuum(shape: Shape) -> Self {
        HVector(PolElement::one(shape))
    }

    pub fn basis(shape: Shape, e: &NormalMonomial) -> Result<Self> {
        HVector::from_poly(PolElement::monomial(shape, e.clone(), S::one()))
    }

    /// `p f0` for holomorphic `p`.
    pub fn from_poly(p: PolElement<S>) -> Result<Self> {
        if let Some((m, _)) = p.terms().find(|(m, _)| !m.is_holomorphic()) {
            return Err(Error::InvalidParameter(format!("Fock vectors need holomorphic coefficients, found {:?}", m)));
        }
        Ok(HVector(p))
    }

    pub fn shape(&self) -> Shape {
        self.0.shape()
    }

    pub fn as_poly(&self) -> &PolElement<S> {
        &self.0
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalMonomial, &S)> {
        self.0.terms()
    }

    pub fn coeff(&self, e: &NormalMonomial) -> S {
        self.0.coeff(e)
    }

    pub fn vacuum_coeff(&self) -> S {
        self.0.coeff(&NormalMonomial::one(&self.shape()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        HVector(self.0.add(&other.0))
    }

    pub fn scale(&self, c: &S) -> Self {
        HVector(self.0.scale(c))
    }
}

impl<S: Coeff> std::fmt::Debug for HVector<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?})·f0", self.0)
    }
}

type Terms<S> = Arc<[(NormalMonomial, S)]>;

/// The Fock representation of an [`Algebra`].
pub struct Fock<S> {
    alg: Algebra<S>,
    y: OnceLock<PolElement<S>>,
    ann_cache: Mutex<HashMap<(Generator, NormalMonomial), Terms<S>>>,
    blocks: integral::BlockCache<S>,
}

impl<S: Coeff> Fock<S> {
    pub fn new(alg: Algebra<S>) -> Self {
        Fock { alg, y: OnceLock::new(), ann_cache: Mutex::new(HashMap::new()), blocks: Default::default() }
    }

    pub fn algebra(&self) -> &Algebra<S> {
        &self.alg
    }

    pub fn shape(&self) -> Shape {
        self.alg.shape()
    }

    /// The element `y`, computed once.
    pub fn y(&self) -> &PolElement<S> {
        self.y.get_or_init(|| self.alg.y_element())
    }

    /// `(z_g)* z^E f0` for holomorphic `z^E`.
    fn annihilate(&self, g: Generator, e: &NormalMonomial) -> Terms<S> {
        let key = (g, e.clone());
        if let Some(hit) = self.ann_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let result: Terms<S> = self.compute_annihilate(g, e).0.into_terms().collect::<Vec<_>>().into();
        self.ann_cache.lock().unwrap().insert(key, result.clone());
        result
    }

    fn compute_annihilate(&self, g: Generator, e: &NormalMonomial) -> HVector<S> {
        let shape = self.shape();
        let Some(hi) = e.first_z() else {
            return HVector::zero(shape);
        };
        let (alpha, a) = shape.position(hi);
        let h = Generator::z(alpha, a);
        let mut rest = e.clone();
        rest.e[hi] -= 1;
        let mut out = PolElement::zero(shape);
        for (word, c) in self.alg.rule(g, h).expect("mixed pair is always a redex") {
            match word.as_slice() {
                [] => out.add_term(rest.clone(), c.clone()),
                [zp, zsp] => {
                    for (m, cm) in self.annihilate(*zsp, &rest).iter() {
                        for (m2, c2) in self.alg.left_mul_letter(*zp, m).iter() {
                            out.add_term(m2.clone(), c.clone() * cm.clone() * c2.clone());
                        }
                    }
                }
                _ => unreachable!("mixed rules have words of length 0 or 2"),
            }
        }
        HVector(out)
    }

    fn apply_letter(&self, g: Generator, v: &HVector<S>) -> HVector<S> {
        let mut out = PolElement::zero(self.shape());
        for (m, c) in v.terms() {
            let image = if g.starred { self.annihilate(g, m) } else { self.alg.left_mul_letter(g, m) };
            for (m2, c2) in image.iter() {
                out.add_term(m2.clone(), c.clone() * c2.clone());
            }
        }
        HVector(out)
    }

    /// `T(w) v` for a word `w`, rightmost letter first.
    pub fn act_word(&self, w: &[Generator], v: &HVector<S>) -> HVector<S> {
        let mut acc = v.clone();
        for &g in w.iter().rev() {
            if acc.is_zero() {
                break;
            }
            acc = self.apply_letter(g, &acc);
        }
        acc
    }

    /// `T(z^A (z^B)*)` applied to `v`.
    pub fn act_monomial(&self, m: &NormalMonomial, v: &HVector<S>) -> HVector<S> {
        self.act_word(&m.word(&self.shape()), v)
    }

    /// `T(f) v`.
    pub fn act(&self, f: &PolElement<S>, v: &HVector<S>) -> Result<HVector<S>> {
        if f.shape() != self.shape() || v.shape() != self.shape() {
            return Err(Error::ShapeMismatch);
        }
        let mut out = HVector::zero(self.shape());
        for (m, c) in f.terms() {
            out = out.add(&self.act_monomial(m, v).scale(c));
        }
        Ok(out)
    }

    /// `T(f) v` through the full normal form of `f p`, dropping every
    /// monomial that still carries an annihilator.
    pub fn act_via_normal_form(&self, f: &PolElement<S>, v: &HVector<S>) -> Result<HVector<S>> {
        let prod = self.alg.multiply(f, v.as_poly())?;
        let kept = prod.into_terms().filter(|(m, _)| m.is_holomorphic());
        Ok(HVector(PolElement::from_terms(self.shape(), kept)))
    }

    /// `T(f0) v`: the vacuum component of `v`.
    pub fn act_vacuum_projector(&self, v: &HVector<S>) -> HVector<S> {
        HVector(self.alg.constant(v.vacuum_coeff()))
    }

    /// `(p1 f0, p2 f0)`: the vacuum coefficient of `T(p1*) p2 f0`.
    pub fn inner(&self, v1: &HVector<S>, v2: &HVector<S>) -> Result<S> {
        if v1.shape() != self.shape() || v2.shape() != self.shape() {
            return Err(Error::ShapeMismatch);
        }
        let mut acc = S::zero();
        for (m1, c1) in v1.terms() {
            for (m2, c2) in v2.terms() {
                if m1.z_part_degree() != m2.z_part_degree() {
                    continue;
                }
                // (z_{g1}⋯z_{gk})* = z_{gk}*⋯z_{g1}*
                let adjoint: Vec<Generator> = m1.word(&self.shape()).into_iter().rev().map(Generator::star).collect();
                let image = self.act_word(&adjoint, &HVector::basis(self.shape(), m2)?);
                acc = acc + c1.clone() * c2.clone() * image.vacuum_coeff();
            }
        }
        Ok(acc)
    }

    pub fn cache_len(&self) -> usize {
        self.ann_cache.lock().unwrap().len()
    }
}

/// `w(E) = Σ E_{αa}(m + n + 1 − α − a)`, the exponent of `q^{-2Γ}` on `z^E f0`.
///
/// The per-generator values `N − 1 − (a−1) − (α−1)` are the exponents of
/// the factors of `C(λ)`, one generator per factor. Which generator gets
/// which value is fixed by requiring the weighted Gram matrices to invert
/// the Bergman kernel coefficients; normalization alone does not fix it.
pub fn weight_exponent(shape: &Shape, e: &NormalMonomial) -> Result<u64> {
    if !e.is_holomorphic() {
        return Err(Error::InvalidParameter("weight is defined on holomorphic monomials only".into()));
    }
    Ok(shape.weights().iter().zip(&e.e).map(|(w, &x)| w * x as u64).sum())
}
