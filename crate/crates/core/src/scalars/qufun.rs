//! Polynomials in `u` (standing for `q^{2λ}`) with coefficients in `ℚ(q)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::qfun::QFun;
use super::Rational;
use crate::error::Result;

/// `coeffs[k]` multiplies `u^k`. `u` never appears in a denominator, so this
/// is a ring; division is only by elements of `ℚ(q)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QUFun {
    coeffs: Vec<QFun>,
}

impl QUFun {
    pub fn from_coeffs(mut coeffs: Vec<QFun>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QUFun { coeffs }
    }

    pub fn constant(c: QFun) -> Self {
        QUFun::from_coeffs(vec![c])
    }

    /// The formal variable `u`.
    pub fn u() -> Self {
        QUFun::u_pow(1)
    }

    pub fn u_pow(k: usize) -> Self {
        let mut coeffs = vec![QFun::zero(); k + 1];
        coeffs[k] = QFun::one();
        QUFun { coeffs }
    }

    pub fn coeffs(&self) -> &[QFun] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> QFun {
        self.coeffs.get(k).cloned().unwrap_or_else(QFun::zero)
    }

    pub fn u_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Returns the `ℚ(q)` value when `u` does not occur.
    pub fn as_qfun(&self) -> Option<QFun> {
        match self.coeffs.len() {
            0 => Some(QFun::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &QFun) -> QUFun {
        if c.is_zero() {
            return QUFun::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        QUFun::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn div_qfun(&self, c: &QFun) -> Result<QUFun> {
        let inv = c.recip()?;
        Ok(self.scale(&inv))
    }

    /// Multiply by `u^k`.
    pub fn shift_u(&self, k: usize) -> QUFun {
        if self.is_zero() {
            return QUFun::zero();
        }
        let mut coeffs = vec![QFun::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QUFun { coeffs }
    }

    /// Substitute a value of `ℚ(q)` for `u`.
    pub fn substitute_u(&self, u: &QFun) -> QFun {
        let mut acc = QFun::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * u) + c;
        }
        acc
    }

    pub fn eval(&self, q: &Rational, u: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c.eval(q)?;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, q: f64, u: f64) -> Result<f64> {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c.eval_f64(q)?;
        }
        Ok(acc)
    }
}

impl From<QFun> for QUFun {
    fn from(c: QFun) -> Self {
        QUFun::constant(c)
    }
}

impl Zero for QUFun {
    fn zero() -> Self {
        QUFun { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for QUFun {
    fn one() -> Self {
        QUFun::constant(QFun::one())
    }
}

impl Add for &QUFun {
    type Output = QUFun;
    fn add(self, rhs: &QUFun) -> QUFun {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = &*c + s;
        }
        QUFun::from_coeffs(coeffs)
    }
}

impl Sub for &QUFun {
    type Output = QUFun;
    fn sub(self, rhs: &QUFun) -> QUFun {
        self + &(-rhs)
    }
}

impl Mul for &QUFun {
    type Output = QUFun;
    fn mul(self, rhs: &QUFun) -> QUFun {
        if self.is_zero() || rhs.is_zero() {
            return QUFun::zero();
        }
        let mut coeffs = vec![QFun::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        QUFun::from_coeffs(coeffs)
    }
}

impl Neg for &QUFun {
    type Output = QUFun;
    fn neg(self) -> QUFun {
        QUFun { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for QUFun {
    type Output = QUFun;
    fn add(self, rhs: QUFun) -> QUFun {
        &self + &rhs
    }
}

impl Sub for QUFun {
    type Output = QUFun;
    fn sub(self, rhs: QUFun) -> QUFun {
        &self - &rhs
    }
}

impl Mul for QUFun {
    type Output = QUFun;
    fn mul(self, rhs: QUFun) -> QUFun {
        &self * &rhs
    }
}

impl Neg for QUFun {
    type Output = QUFun;
    fn neg(self) -> QUFun {
        -&self
    }
}

impl fmt::Debug for QUFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::qufun_to_text(self))
    }
}

impl fmt::Display for QUFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::qufun_to_text(self))
    }
}
