//! Invariant and weighted integrals as weighted traces over `H`.

use std::collections::HashMap;
use std::sync::Mutex;

use super::block::{degree_basis, ty_power_block_float, Class};
use super::{weight_exponent, Fock, HVector};
use crate::algebra::{Algebra, NormalMonomial, PolElement, Shape};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use num_traits::One;

use crate::scalars::{Coeff, Magnitude, QFun, QUFun, Rational};

/// `C(λ) = ∏_{j<n} ∏_{k<m} (1 − u q^{2(1−N+j+k)})` with `u = q^{2λ}` formal
/// and `N = m + n`.
pub fn c_lambda_formal(shape: &Shape) -> QUFun {
    let big_n = (shape.m + shape.n) as i64;
    let mut acc = QUFun::one();
    for j in 0..shape.n as i64 {
        for k in 0..shape.m as i64 {
            let factor = QUFun::from_coeffs(vec![QFun::from_i64(1), -QFun::q_pow(2 * (1 - big_n + j + k))]);
            acc = &acc * &factor;
        }
    }
    acc
}

/// `C(λ)` for integer `λ` in the coefficient ring of `alg`.
pub fn c_lambda<S: Coeff>(alg: &Algebra<S>, lambda: u32) -> S {
    let shape = alg.shape();
    let big_n = (shape.m + shape.n) as i64;
    let mut acc = S::one();
    for j in 0..shape.n as i64 {
        for k in 0..shape.m as i64 {
            acc = acc * (S::one() - alg.q_pow(2 * (lambda as i64 + 1 - big_n + j + k)));
        }
    }
    acc
}

/// Settings of a truncated weighted integral.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralParams {
    pub lambda: u32,
    /// Blocks are added until two consecutive contributions are at most this.
    pub tolerance: Rational,
    pub max_degree: usize,
}

impl IntegralParams {
    pub fn new(lambda: u32, tolerance: Rational) -> Self {
        IntegralParams { lambda, tolerance, max_degree: 80 }
    }

    pub fn check(&self, shape: &Shape) -> Result<()> {
        if (self.lambda as usize) < shape.m + shape.n {
            return Err(Error::InvalidParameter(format!(
                "weighted integrals need lambda > m+n-1 = {}, got {}",
                shape.m + shape.n - 1,
                self.lambda
            )));
        }
        Ok(())
    }
}

/// A value obtained by summing blocks of degree `0..=degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct Truncated<S> {
    pub value: S,
    pub degree: usize,
    /// Size of the last two block contributions.
    pub delta: f64,
}

/// Keyed by (degree, class, λ); holds the block basis and its weighted matrix.
type WeightedBlocks<S> = HashMap<(usize, Class, u32), (Vec<NormalMonomial>, Matrix<S>)>;

/// Per-block `Ty^λ q^{-2Γ}` cache.
pub(super) struct BlockCache<S> {
    weighted: Mutex<WeightedBlocks<S>>,
}

impl<S> Default for BlockCache<S> {
    fn default() -> Self {
        BlockCache { weighted: Mutex::new(HashMap::new()) }
    }
}

impl<S: Coeff> Fock<S> {
    /// `∫ p_left f0 p_right dν = tr(T(f) q^{-2Γ})`. The operator has rank one,
    /// so the trace is the vacuum coefficient of `T(p_right) q^{-2Γ} p_left f0`.
    pub fn invariant_integral(&self, p_left: &PolElement<S>, p_right: &PolElement<S>) -> Result<S> {
        let v = self.act(p_left, &HVector::vacuum(self.shape()))?;
        let wv = self.apply_weight(&v)?;
        Ok(self.act(p_right, &wv)?.vacuum_coeff())
    }

    fn apply_weight(&self, v: &HVector<S>) -> Result<HVector<S>> {
        let shape = self.shape();
        let mut out = PolElement::zero(shape);
        for (m, c) in v.terms() {
            let w = weight_exponent(&shape, m)? as i64;
            out.add_term(m.clone(), c.clone() * self.algebra().q_pow(-2 * w));
        }
        HVector::from_poly(out)
    }

    /// `C(λ) tr(T(f) T(y)^λ q^{-2Γ})` for the finite function `f = p_left f0 p_right`.
    pub fn weighted_integral_finite(&self, p_left: &PolElement<S>, p_right: &PolElement<S>, lambda: u32) -> Result<S> {
        let mut v = self.apply_weight(&self.act(p_left, &HVector::vacuum(self.shape()))?)?;
        for _ in 0..lambda {
            v = self.act(self.y(), &v)?;
        }
        Ok(c_lambda(self.algebra(), lambda) * self.act(p_right, &v)?.vacuum_coeff())
    }

    /// `(basis, Ty^λ W)` for one class of one degree.
    fn weighted_block(&self, d: usize, class: &Class, lambda: u32) -> Result<(Vec<NormalMonomial>, Matrix<S>)> {
        let key = (d, class.clone(), lambda);
        if let Some(hit) = self.blocks.weighted.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let basis = degree_basis(&self.shape(), d).remove(class).unwrap_or_default();
        let x = self.ty_matrix(&basis)?.pow(lambda)?.mul(&self.weight_matrix(&basis)?)?;
        self.blocks.weighted.lock().unwrap().insert(key, (basis.clone(), x.clone()));
        Ok((basis, x))
    }
}

/// Keep only the terms of `f` that can have a nonzero diagonal: those of
/// zero weight. Other terms move every class to a different one.
fn diagonal_part<S: Coeff>(f: &PolElement<S>) -> PolElement<S> {
    let shape = f.shape();
    PolElement::from_terms(
        shape,
        f.terms()
            .filter(|(m, _)| {
                let (r, c) = m.weight_vector(&shape);
                r.iter().chain(&c).all(|&x| x == 0)
            })
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

impl<S: Coeff + Magnitude> Fock<S> {
    /// `∫ f dν_λ` for a polynomial `f`, summed over degree blocks until two
    /// consecutive contributions fall below the tolerance.
    pub fn weighted_integral(&self, f: &PolElement<S>, params: &IntegralParams) -> Result<Truncated<S>> {
        let shape = self.shape();
        params.check(&shape)?;
        let c = c_lambda(self.algebra(), params.lambda);
        let f = diagonal_part(f);
        let start = f.terms().map(|(m, _)| m.star_part_degree() as usize).max().unwrap_or(0);
        let mut total = S::zero();
        let mut prev: Option<S> = None;
        for d in 0..=params.max_degree {
            let mut block = S::zero();
            if !f.is_zero() {
                for class in degree_basis(&shape, d).keys() {
                    let (basis, x) = self.weighted_block(d, class, params.lambda)?;
                    let mf = self.operator_matrix(&f, &basis, &basis)?;
                    block = block + mf.trace_of_product(&x)?;
                }
            }
            let contribution = c.clone() * block;
            total = total + contribution.clone();
            if d > start {
                if let Some(p) = &prev {
                    if p.within(&params.tolerance) && contribution.within(&params.tolerance) {
                        let delta = p.to_f64().abs() + contribution.to_f64().abs();
                        return Ok(Truncated { value: total, degree: d, delta });
                    }
                }
            }
            prev = Some(contribution);
        }
        Err(Error::NotStabilized { degree: params.max_degree, delta: prev.map_or(f64::NAN, |p| p.to_f64().abs()) })
    }

    /// `⟨z^E, z^{E'}⟩_λ = ∫ (z^E)* z^{E'} dν_λ` over the degree-`d` basis.
    /// Entries between different classes vanish and are not integrated.
    pub fn gram_matrix(&self, d: usize, params: &IntegralParams) -> Result<GramMatrix<S>> {
        let shape = self.shape();
        params.check(&shape)?;
        let basis = gram_basis(&shape, d);
        let mut matrix = Matrix::zeros(basis.len(), basis.len());
        let mut delta: f64 = 0.0;
        let mut degree = 0;
        for (i, bi) in basis.iter().enumerate() {
            let pi = PolElement::monomial(shape, bi.clone(), S::one());
            let pi_star = self.algebra().star(&pi);
            for (j, bj) in basis.iter().enumerate() {
                if super::class_of(&shape, bi) != super::class_of(&shape, bj) {
                    continue;
                }
                let pj = PolElement::monomial(shape, bj.clone(), S::one());
                let f = self.algebra().multiply(&pi_star, &pj)?;
                let t = self.weighted_integral(&f, params)?;
                delta = delta.max(t.delta);
                degree = degree.max(t.degree);
                matrix[(i, j)] = t.value;
            }
        }
        Ok(GramMatrix { degree: d, basis, matrix, delta, truncation: degree })
    }
}

impl Fock<f64> {
    /// `∫ f dν_λ` for real `λ > m+n−1`, with `T(y)^λ` from the symmetric
    /// eigendecomposition of each block.
    pub fn weighted_integral_real(
        &self,
        f: &PolElement<f64>,
        lambda: f64,
        tolerance: f64,
        max_degree: usize,
    ) -> Result<Truncated<f64>> {
        let shape = self.shape();
        if lambda <= (shape.m + shape.n - 1) as f64 {
            return Err(Error::InvalidParameter(format!("weighted integrals need lambda > {}", shape.m + shape.n - 1)));
        }
        let q = *self.algebra().q();
        let u = q.powf(2.0 * lambda);
        let big_n = (shape.m + shape.n) as i32;
        let mut c = 1.0;
        for j in 0..shape.n as i32 {
            for k in 0..shape.m as i32 {
                c *= 1.0 - u * q.powi(2 * (1 - big_n + j + k));
            }
        }
        let f = diagonal_part(f);
        let start = f.terms().map(|(m, _)| m.star_part_degree() as usize).max().unwrap_or(0);
        let mut total = 0.0;
        let mut prev: Option<f64> = None;
        for d in 0..=max_degree {
            let mut block = 0.0;
            for basis in degree_basis(&shape, d).values() {
                let ty = self.ty_matrix(basis)?;
                let gram = self.gram_of(basis)?;
                let x = ty_power_block_float(&ty, &gram, lambda)?.mul(&self.weight_matrix(basis)?)?;
                block += self.operator_matrix(&f, basis, basis)?.trace_of_product(&x)?;
            }
            let contribution = c * block;
            total += contribution;
            if d > start {
                if let Some(p) = prev {
                    if p.abs() <= tolerance && contribution.abs() <= tolerance {
                        return Ok(Truncated { value: total, degree: d, delta: p.abs() + contribution.abs() });
                    }
                }
            }
            prev = Some(contribution);
        }
        Err(Error::NotStabilized { degree: max_degree, delta: prev.unwrap_or(f64::NAN).abs() })
    }
}

/// Degree-`d` holomorphic monomials in serialization order.
pub fn gram_basis(shape: &Shape, d: usize) -> Vec<NormalMonomial> {
    shape.exponents_of_degree(d).into_iter().map(NormalMonomial::holomorphic).collect()
}

/// Gram matrix of one degree with its truncation data.
#[derive(Clone, Debug)]
pub struct GramMatrix<S> {
    pub degree: usize,
    pub basis: Vec<NormalMonomial>,
    pub matrix: Matrix<S>,
    /// Largest stabilization delta over the entries.
    pub delta: f64,
    /// Largest block degree summed for any entry.
    pub truncation: usize,
}
