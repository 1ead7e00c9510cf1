//! Finite blocks of `H` by degree and multidegree class.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use super::{weight_exponent, Fock, HVector};
use crate::algebra::{NormalMonomial, Shape};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalars::Coeff;

/// Row sums and column sums of a holomorphic exponent matrix. Every
/// operator of zero weight, `y` and `q^{-2Γ}` included, preserves them.
pub type Class = (Vec<u32>, Vec<u32>);

pub fn class_of(shape: &Shape, e: &NormalMonomial) -> Class {
    let [rows, cols, _, _] = e.multidegree(shape);
    (rows, cols)
}

/// Holomorphic monomials of degree `d` grouped by class, each group in
/// serialization order.
pub fn degree_basis(shape: &Shape, d: usize) -> BTreeMap<Class, Vec<NormalMonomial>> {
    let mut out: BTreeMap<Class, Vec<NormalMonomial>> = BTreeMap::new();
    for e in shape.exponents_of_degree(d) {
        let m = NormalMonomial::holomorphic(e);
        out.entry(class_of(shape, &m)).or_default().push(m);
    }
    out
}

/// The restriction of `T(y)`, the canonical scalar product and `q^{-2Γ}`
/// to one degree (optionally one class). Matrix columns are images of basis
/// vectors; `gram[(i, j)] = (b_i, b_j)`.
#[derive(Clone, Debug)]
pub struct DegreeBlock<S> {
    pub degree: usize,
    pub class: Option<Class>,
    pub basis: Vec<NormalMonomial>,
    pub ty: Matrix<S>,
    pub gram: Matrix<S>,
    pub weight: Matrix<S>,
}

impl<S: Coeff> Fock<S> {
    /// Matrix of `T(f)` from `domain` into `codomain`, columns indexed by the domain.
    pub fn operator_matrix(
        &self,
        f: &crate::algebra::PolElement<S>,
        domain: &[NormalMonomial],
        codomain: &[NormalMonomial],
    ) -> Result<Matrix<S>> {
        let shape = self.shape();
        let mut out = Matrix::zeros(codomain.len(), domain.len());
        let index: BTreeMap<&NormalMonomial, usize> = codomain.iter().enumerate().map(|(i, m)| (m, i)).collect();
        for (j, b) in domain.iter().enumerate() {
            let image = self.act(f, &HVector::basis(shape, b)?)?;
            for (m, c) in image.terms() {
                let &i = index
                    .get(m)
                    .ok_or_else(|| Error::InvalidParameter(format!("image leaves the target block: {m:?}")))?;
                out[(i, j)] = c.clone();
            }
        }
        Ok(out)
    }

    pub fn ty_matrix(&self, basis: &[NormalMonomial]) -> Result<Matrix<S>> {
        self.operator_matrix(self.y(), basis, basis)
    }

    pub fn gram_of(&self, basis: &[NormalMonomial]) -> Result<Matrix<S>> {
        let shape = self.shape();
        let vecs = basis.iter().map(|b| HVector::basis(shape, b)).collect::<Result<Vec<_>>>()?;
        let mut out = Matrix::zeros(basis.len(), basis.len());
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                out[(i, j)] = self.inner(&vecs[i], &vecs[j])?;
            }
        }
        Ok(out)
    }

    pub fn weight_matrix(&self, basis: &[NormalMonomial]) -> Result<Matrix<S>> {
        let shape = self.shape();
        let diag = basis
            .iter()
            .map(|b| Ok(self.algebra().q_pow(-2 * weight_exponent(&shape, b)? as i64)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::diagonal(diag))
    }

    /// The degree-`d` block, restricted to `class` when given.
    pub fn degree_block(&self, d: usize, class: Option<&Class>) -> Result<DegreeBlock<S>> {
        let shape = self.shape();
        let basis: Vec<NormalMonomial> = match class {
            Some(c) => degree_basis(&shape, d).remove(c).unwrap_or_default(),
            None => super::gram_basis(&shape, d),
        };
        Ok(DegreeBlock {
            degree: d,
            class: class.cloned(),
            ty: self.ty_matrix(&basis)?,
            gram: self.gram_of(&basis)?,
            weight: self.weight_matrix(&basis)?,
            basis,
        })
    }
}

/// `Ty^λ` on a block, exact for integer `λ`.
pub fn ty_power_block<S: Coeff>(block: &DegreeBlock<S>, lambda: u32) -> Result<Matrix<S>> {
    block.ty.pow(lambda)
}

/// `Ty^λ` for real `λ` through the `S`-symmetric eigendecomposition: with
/// `S = LLᵀ`, `B = Lᵀ Ty L^{-T}` is symmetric and `Ty^λ = L^{-T} B^λ Lᵀ`.
pub fn ty_power_block_float(ty: &Matrix<f64>, gram: &Matrix<f64>, lambda: f64) -> Result<Matrix<f64>> {
    let n = ty.rows();
    if n == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    let to_na = |m: &Matrix<f64>| DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)]);
    let s = to_na(gram);
    let t = to_na(ty);
    let chol = s.cholesky().ok_or_else(|| Error::InvalidParameter("Gram block is not positive definite".into()))?;
    let l = chol.l();
    let lt = l.transpose();
    let lt_inv = lt.clone().try_inverse().ok_or(Error::DivisionByZero)?;
    let b = &lt * &t * &lt_inv;
    let b = (&b + b.transpose()) * 0.5;
    let eig = b.symmetric_eigen();
    if eig.eigenvalues.iter().any(|&x| x <= 0.0) {
        return Err(Error::InvalidParameter("T(y) has a non-positive eigenvalue on this block".into()));
    }
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|x| x.powf(lambda)));
    let v = &eig.eigenvectors;
    let p = &lt_inv * v * d * v.transpose() * &lt;
    Ok(Matrix::from_fn(n, n, |i, j| p[(i, j)]))
}
