use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::text::{qfun_to_text, qufun_to_text, rational_to_text};
use super::{QFun, QUFun, Rational};
use crate::error::{Error, Result};

/// Coefficient ring for algebra elements, Fock vectors and kernels.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// Canonical string form, see [`super::text`].
    fn to_text(&self) -> String;
}

pub trait FieldCoeff: Coeff {
    fn inv(&self) -> Result<Self>;
}

/// Coefficients that can be compared against a numeric tolerance.
pub trait Magnitude {
    fn to_f64(&self) -> f64;

    /// `|self| <= tol`, exact where the type allows it.
    fn within(&self, tol: &Rational) -> bool;
}

impl Coeff for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v.into())
    }
    fn to_text(&self) -> String {
        rational_to_text(self)
    }
}

impl FieldCoeff for Rational {
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

impl Magnitude for Rational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn within(&self, tol: &Rational) -> bool {
        self.abs() <= *tol
    }
}

impl Coeff for QFun {
    fn from_i64(v: i64) -> Self {
        QFun::from_i64(v)
    }
    fn to_text(&self) -> String {
        qfun_to_text(self)
    }
}

impl FieldCoeff for QFun {
    fn inv(&self) -> Result<Self> {
        self.recip()
    }
}

impl Coeff for QUFun {
    fn from_i64(v: i64) -> Self {
        QUFun::constant(QFun::from_i64(v))
    }
    fn to_text(&self) -> String {
        qufun_to_text(self)
    }
}

impl Coeff for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_text(&self) -> String {
        format!("{self:e}")
    }
}

impl FieldCoeff for f64 {
    fn inv(&self) -> Result<Self> {
        if *self == 0.0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(1.0 / self)
        }
    }
}

impl Magnitude for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
    fn within(&self, tol: &Rational) -> bool {
        self.abs() <= ToPrimitive::to_f64(tol).unwrap_or(0.0)
    }
}
