//! Small dense matrices over the coefficient types.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalars::{Coeff, FieldCoeff, Rational};

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Coeff> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidShape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn diagonal(entries: Vec<S>) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<T: Coeff>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<T: Coeff>(&self, f: impl Fn(&S) -> Result<T>) -> Result<Matrix<T>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InvalidShape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out: Matrix<S> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidShape("matrix dimensions differ".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> Result<S> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::InvalidShape("trace of product needs transposed shapes".into()));
        }
        let mut acc = S::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                let b = &other[(k, i)];
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a.clone() * b.clone();
                }
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, mut e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::InvalidShape("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<S: FieldCoeff> Matrix<S> {
    /// Determinant by Gaussian elimination.
    pub fn determinant(&self) -> Result<S> {
        if !self.is_square() {
            return Err(Error::InvalidShape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(S::zero());
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det = det * pivot.clone();
            let inv = pivot.inv()?;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone() * inv.clone();
                for c in col..n {
                    a[(r, c)] = a[(r, c)].clone() - factor.clone() * a[(col, c)].clone();
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::InvalidShape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv: Matrix<S> = Matrix::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::DivisionByZero)?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pinv = a[(col, col)].inv()?;
            for c in 0..n {
                a[(col, c)] = a[(col, c)].clone() * pinv.clone();
                inv[(col, c)] = inv[(col, c)].clone() * pinv.clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for c in 0..n {
                    a[(r, c)] = a[(r, c)].clone() - factor.clone() * a[(col, c)].clone();
                    inv[(r, c)] = inv[(r, c)].clone() - factor.clone() * inv[(col, c)].clone();
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl Matrix<Rational> {
    pub fn leading_principal_minors(&self) -> Result<Vec<Rational>> {
        (1..=self.rows).map(|k| Matrix::from_fn(k, k, |i, j| self[(i, j)].clone()).determinant()).collect()
    }

    /// Exact test via leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric() && self.leading_principal_minors().is_ok_and(|ms| ms.iter().all(Signed::is_positive))
    }

    /// Exact test via symmetric elimination: a zero pivot is allowed only
    /// when its whole remaining row vanishes.
    pub fn is_positive_semidefinite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let n = self.rows;
        let mut a = self.clone();
        for k in 0..n {
            let pivot = a[(k, k)].clone();
            if pivot.is_negative() {
                return false;
            }
            if pivot.is_zero() {
                if (k + 1..n).any(|j| !a[(k, j)].is_zero()) {
                    return false;
                }
                continue;
            }
            for i in k + 1..n {
                let factor = a[(i, k)].clone() / pivot.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    a[(i, j)] = a[(i, j)].clone() - factor.clone() * a[(k, j)].clone();
                }
            }
        }
        true
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        use num_traits::ToPrimitive;
        self.map(|x| x.to_f64().unwrap_or(f64::NAN))
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(|row| row.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.iter().map(|r| format!("[{r}]")).collect::<Vec<_>>().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational;

    fn r(n: i64, d: i64) -> Rational {
        rational(n, d)
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_rows(vec![vec![r(2, 1), r(1, 1)], vec![r(1, 1), r(3, 1)]]).unwrap();
        assert_eq!(m.determinant().unwrap(), r(5, 1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        let singular = Matrix::from_rows(vec![vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(4, 1)]]).unwrap();
        assert!(singular.inverse().is_err());
        assert!(singular.determinant().unwrap().is_zero());
    }

    #[test]
    fn pivoting_determinant_sign() {
        let m = Matrix::from_rows(vec![vec![r(0, 1), r(1, 1)], vec![r(1, 1), r(0, 1)]]).unwrap();
        assert_eq!(m.determinant().unwrap(), r(-1, 1));
    }

    #[test]
    fn definiteness() {
        let pd = Matrix::from_rows(vec![vec![r(2, 1), r(1, 1)], vec![r(1, 1), r(1, 1)]]).unwrap();
        assert!(pd.is_positive_definite());
        assert!(pd.is_positive_semidefinite());
        let psd = Matrix::from_rows(vec![vec![r(1, 1), r(1, 1)], vec![r(1, 1), r(1, 1)]]).unwrap();
        assert!(!psd.is_positive_definite());
        assert!(psd.is_positive_semidefinite());
        let indefinite = Matrix::from_rows(vec![vec![r(0, 1), r(1, 1)], vec![r(1, 1), r(0, 1)]]).unwrap();
        assert!(!indefinite.is_positive_semidefinite());
    }

    #[test]
    fn power_and_trace() {
        let m = Matrix::from_rows(vec![vec![r(1, 1), r(1, 1)], vec![r(0, 1), r(1, 2)]]).unwrap();
        let m3 = m.pow(3).unwrap();
        assert_eq!(m3, m.mul(&m).unwrap().mul(&m).unwrap());
        assert_eq!(m.pow(0).unwrap(), Matrix::identity(2));
        assert_eq!(m.trace_of_product(&m3).unwrap(), m.pow(4).unwrap().trace());
    }
}
