//! Exact scalar arithmetic.
//!
//! Four coefficient domains are used throughout the crate:
//!
//! - [`Rational`]: arbitrary-precision rationals (numeric evaluation at a
//!   fixed rational `q`),
//! - [`QFun`]: rational functions in a formal `q`,
//! - [`QUFun`]: polynomials in a second formal variable `u = q^{2λ}` over
//!   `ℚ(q)`,
//! - `f64`: floating-point evaluation for large smoke runs only.
//!
//! All of them implement [`Coeff`], which is what the algebra and the Fock
//! representation are generic over.

mod coeff;
mod mode;
pub mod poly;
mod qfun;
mod qufun;
pub mod text;

pub use coeff::{Coeff, FieldCoeff, Magnitude};
pub use mode::{check_q, evaluate, Scalar, ScalarMode, Value};
pub use poly::Poly;
pub use qfun::QFun;
pub use qufun::QUFun;

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
