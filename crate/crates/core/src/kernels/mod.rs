//! The kernel algebra `ℂ[Mat]^op ⊗ ℂ[Mat̄]`, the kernels `𝕜_i` and the
//! degree-truncated expansions of the weighted and ordinary Bergman kernels.
//!
//! The infinite products are expanded through the functional equation
//! `G(t) = F(t) G(q²t)` with `F(t) = 1 + Σ_i (−t)^i 𝕜_i`, which only divides
//! by `1 − q^{2d}`. Formal `λ` enters through `u = q^{2λ}`.

mod element;
mod json;

use std::sync::OnceLock;

pub use element::{KernelElement, KernelMonomial};
pub use json::{parse_series, series_to_json, EntryDoc, SeriesDoc, TermDoc};

use crate::algebra::{minors::subsets, Algebra, NormalMonomial, PolElement, Shape};
use crate::error::{Error, Result};
use crate::fock::gram_basis;
use crate::linalg::Matrix;
use crate::scalars::{Coeff, QFun, QUFun, Rational};

/// How `λ` enters a series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaTag {
    /// `u = q^{2λ}` kept formal.
    Formal,
    /// A fixed value, recorded as text.
    Value(String),
}

/// Components of bidegree `(d, −d)` for `d = 0..=D`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSeries {
    pub shape: Shape,
    pub lambda: LambdaTag,
    pub terms: Vec<KernelElement<QUFun>>,
}

impl KernelSeries {
    pub fn degree(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn component(&self, d: usize) -> Result<&KernelElement<QUFun>> {
        self.terms
            .get(d)
            .ok_or_else(|| Error::IndexOutOfRange(format!("degree {d} beyond truncation {}", self.degree())))
    }

    /// Substitute a value of `u` in every coefficient.
    pub fn substitute_u(&self, u: &QFun, tag: LambdaTag) -> KernelSeries {
        let terms = self.terms.iter().map(|k| k.map_coeffs(|c| QUFun::constant(c.substitute_u(u)))).collect();
        KernelSeries { shape: self.shape, lambda: tag, terms }
    }
}

/// Which of the two products is being expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductScale {
    /// `∏_j (1 + Σ (−q^{2j})^i 𝕜_i)`
    Plain,
    /// `∏_j (1 + Σ (−q^{2(λ+j)})^i 𝕜_i)`
    Numerator,
}

/// Kernel computations over formal `q`.
pub struct Kernels {
    alg: Algebra<QFun>,
    k: OnceLock<Vec<KernelElement<QUFun>>>,
}

impl Kernels {
    pub fn new(shape: Shape) -> Self {
        Kernels { alg: Algebra::formal(shape), k: OnceLock::new() }
    }

    pub fn shape(&self) -> Shape {
        self.alg.shape()
    }

    pub fn algebra(&self) -> &Algebra<QFun> {
        &self.alg
    }

    /// Left legs multiply in the opposite order, right legs in the given one.
    pub fn kernel_mul<C: Coeff + From<QFun>>(
        &self,
        x: &KernelElement<C>,
        y: &KernelElement<C>,
    ) -> Result<KernelElement<C>> {
        if x.shape() != self.shape() || y.shape() != self.shape() {
            return Err(Error::ShapeMismatch);
        }
        let mut out = KernelElement::zero(self.shape());
        for (kx, cx) in x.terms() {
            for (ky, cy) in y.terms() {
                let c = cx.clone() * cy.clone();
                let left = self.alg.mul_monomials(&ky.left, &kx.left);
                let right = self.alg.mul_monomials(&kx.right, &ky.right);
                for (l, cl) in left.terms() {
                    for (r, cr) in right.terms() {
                        let m = KernelMonomial { left: l.clone(), right: r.clone() };
                        out.add_term(m, c.clone() * C::from(cl.clone() * cr.clone()));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `b* ⊗ a*` for `a ⊗ b`, legs renormalized.
    pub fn conjugate(&self, x: &KernelElement<QUFun>) -> KernelElement<QUFun> {
        let shape = self.shape();
        let mut out = KernelElement::zero(shape);
        for (m, c) in x.terms() {
            let one = QFun::from_i64(1);
            let left = self.alg.star(&PolElement::monomial(shape, m.right.clone(), one.clone()));
            let right = self.alg.star(&PolElement::monomial(shape, m.left.clone(), one));
            let t: KernelElement<QUFun> = KernelElement::tensor(&left, &right).expect("star swaps leg types");
            out = out.add(&t.scale(c));
        }
        out
    }

    /// `𝕜_i = Σ_{|J'|=|J''|=i} z^{∧i} ⊗ (z^{∧i})*` over all `i × i` minors.
    pub fn poly_kernel(&self, i: usize) -> Result<KernelElement<QUFun>> {
        let shape = self.shape();
        if i == 0 || i > shape.m {
            return Err(Error::InvalidParameter(format!("kernel index must lie in 1..={}, got {i}", shape.m)));
        }
        Ok(self.all_kernels()[i - 1].clone())
    }

    fn all_kernels(&self) -> &[KernelElement<QUFun>] {
        self.k.get_or_init(|| {
            let shape = self.shape();
            (1..=shape.m)
                .map(|i| {
                    let mut acc = KernelElement::zero(shape);
                    for rows in subsets(shape.m, i) {
                        for cols in subsets(shape.n, i) {
                            let minor = self.alg.q_minor(&rows, &cols).expect("valid index sets");
                            let adj = self.alg.star(&minor);
                            acc = acc.add(&KernelElement::tensor(&minor, &adj).expect("minor is holomorphic"));
                        }
                    }
                    acc
                })
                .collect()
        })
    }

    fn k_times(&self, i: usize, x: &KernelElement<QUFun>) -> KernelElement<QUFun> {
        self.kernel_mul(&self.all_kernels()[i - 1], x).expect("same shape")
    }

    /// Coefficients of one of the two infinite products:
    /// `g_d (1 − q^{2d}) = Σ_{i≥1} (−1)^i q^{2(d−i)} [u^i] 𝕜_i g_{d−i}`.
    pub fn product_series(&self, degree: usize, scale: ProductScale) -> KernelSeries {
        let shape = self.shape();
        let mut g = vec![KernelElement::one(shape)];
        for d in 1..=degree {
            let mut acc = KernelElement::zero(shape);
            for i in 1..=shape.m.min(d) {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let mut coef = QUFun::constant(QFun::q_pow(2 * (d - i) as i64) * QFun::from_i64(sign));
                if scale == ProductScale::Numerator {
                    coef = coef.shift_u(i);
                }
                acc = acc.add(&self.k_times(i, &g[d - i]).scale(&coef));
            }
            let den = QFun::one_minus(1, 2 * d);
            g.push(acc.map_coeffs(|c| c.div_qfun(&den).expect("1 − q^{2d} is nonzero")));
        }
        let lambda = match scale {
            ProductScale::Plain => LambdaTag::Value("0".into()),
            ProductScale::Numerator => LambdaTag::Formal,
        };
        KernelSeries { shape, lambda, terms: g }
    }

    /// Inverse of the plain product: `h_d (1 − q^{2d}) = −Σ_{i≥1} (−1)^i 𝕜_i h_{d−i}`.
    pub fn inverse_series(&self, degree: usize) -> KernelSeries {
        let shape = self.shape();
        let mut h = vec![KernelElement::one(shape)];
        for d in 1..=degree {
            let mut acc = KernelElement::zero(shape);
            for i in 1..=shape.m.min(d) {
                let term = self.k_times(i, &h[d - i]);
                acc = if i % 2 == 0 { acc.sub(&term) } else { acc.add(&term) };
            }
            let den = QFun::one_minus(1, 2 * d);
            h.push(acc.map_coeffs(|c| c.div_qfun(&den).expect("1 − q^{2d} is nonzero")));
        }
        KernelSeries { shape, lambda: LambdaTag::Value("0".into()), terms: h }
    }

    /// Degree-wise product of two series, truncated at the shorter one.
    pub fn series_mul(&self, a: &KernelSeries, b: &KernelSeries) -> Result<Vec<KernelElement<QUFun>>> {
        let degree = a.degree().min(b.degree());
        let mut out = Vec::with_capacity(degree + 1);
        for total in 0..=degree {
            let mut acc = KernelElement::zero(self.shape());
            for d in 0..=total {
                acc = acc.add(&self.kernel_mul(&a.terms[d], &b.terms[total - d])?);
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// `K_λ` up to degree `D` with `u = q^{2λ}` formal: the numerator product
    /// times the inverse of the plain product, in that order.
    pub fn bergman_kernel(&self, degree: usize) -> KernelSeries {
        let num = self.product_series(degree, ProductScale::Numerator);
        let inv = self.inverse_series(degree);
        let terms = self.series_mul(&num, &inv).expect("same shape");
        KernelSeries { shape: self.shape(), lambda: LambdaTag::Formal, terms }
    }

    /// `∏_{j=0}^{m+n−1} (1 + Σ_i (−q^{2j})^i 𝕜_i)^{−1}`, one triangular
    /// solve per factor: `Y_d = X_d − Σ_{i≥1} (−q^{2j})^i 𝕜_i Y_{d−i}`.
    pub fn ordinary_bergman_kernel(&self, degree: usize) -> KernelSeries {
        let shape = self.shape();
        let mut x: Vec<KernelElement<QUFun>> =
            (0..=degree).map(|d| if d == 0 { KernelElement::one(shape) } else { KernelElement::zero(shape) }).collect();
        for j in 0..shape.m + shape.n {
            let mut y: Vec<KernelElement<QUFun>> = Vec::with_capacity(degree + 1);
            for d in 0..=degree {
                let mut acc = x[d].clone();
                for i in 1..=shape.m.min(d) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    let coef = QUFun::constant(QFun::q_pow((2 * j * i) as i64) * QFun::from_i64(sign));
                    acc = acc.sub(&self.k_times(i, &y[d - i]).scale(&coef));
                }
                y.push(acc);
            }
            x = y;
        }
        KernelSeries { shape, lambda: LambdaTag::Value((shape.m + shape.n).to_string()), terms: x }
    }

    /// `T[F][E'] = coefficient of z^{E'} in (z^F)*`'s adjoint, i.e. in
    /// `star((z^F)*)` written in the holomorphic basis.
    fn adjoint_change(&self, basis: &[NormalMonomial]) -> Matrix<QUFun> {
        let shape = self.shape();
        Matrix::from_fn(basis.len(), basis.len(), |f, e| {
            let zf =
                PolElement::monomial(shape, NormalMonomial::antiholomorphic(basis[f].e.clone()), QFun::from_i64(1));
            QUFun::constant(self.alg.star(&zf).coeff(&basis[e]))
        })
    }

    /// The degree-`d` component written as `Σ C[E][E'] z^E ⊗ (z^{E'})*`.
    /// Rows follow the left (holomorphic) leg, columns the adjoint leg, both
    /// in the basis order of [`gram_basis`].
    pub fn coefficient_matrix(&self, s: &KernelSeries, d: usize) -> Result<Matrix<QUFun>> {
        let shape = self.shape();
        let comp = s.component(d)?;
        let basis = gram_basis(&shape, d);
        let index = |e: &[u32]| basis.iter().position(|b| b.e == e);
        let mut k = Matrix::zeros(basis.len(), basis.len());
        for (m, c) in comp.terms() {
            let (Some(i), Some(j)) = (index(&m.left.e), index(&m.right.f)) else {
                return Err(Error::InvalidParameter("component is not of bidegree (d, -d)".into()));
            };
            k[(i, j)] = c.clone();
        }
        k.mul(&self.adjoint_change(&basis))
    }
}

/// Evaluate every entry at rational `q` and `u`.
pub fn evaluate_matrix(m: &Matrix<QUFun>, q: &Rational, u: &Rational) -> Result<Matrix<Rational>> {
    m.try_map(|c| c.eval(q, u))
}

#[cfg(test)]
mod tests;
