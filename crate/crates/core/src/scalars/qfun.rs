//! Rational functions in the formal variable `q`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::Rational;
use crate::error::{Error, Result};

/// A reduced fraction `num / den` of polynomials in `q`.
///
/// Canonical form: `gcd(num, den) = 1` and the lowest nonzero coefficient of
/// `den` is `1`. Zero is `0 / 1`. Laurent monomials such as `q^-1` live here
/// as `1 / q`, so every coefficient in the system shares one representation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QFun {
    num: Poly,
    den: Poly,
}

impl QFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        QFun { num: p, den: Poly::one() }
    }

    pub fn from_rational(c: Rational) -> Self {
        QFun::from_poly(Poly::constant(c))
    }

    pub fn from_i64(c: i64) -> Self {
        QFun::from_rational(Rational::from_integer(c.into()))
    }

    /// The formal variable `q`.
    pub fn q() -> Self {
        QFun::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let m = Poly::monomial(Rational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            QFun { num: m, den: Poly::one() }
        } else {
            QFun { num: Poly::one(), den: m }
        }
    }

    /// `1 - c * q^k` for `k >= 0`.
    pub fn one_minus(c: i64, k: usize) -> Self {
        let one = Poly::one();
        let m = Poly::monomial(Rational::from_integer(c.into()), k);
        QFun::from_poly(&one - &m)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial()
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return QFun::zero();
        }
        let v = num.valuation().unwrap().min(den.valuation().unwrap());
        let (mut num, mut den) = (num.shift_down(v), den.shift_down(v));
        // After stripping the common power of q a monomial denominator is
        // either constant or coprime to the numerator.
        if !den.is_monomial() {
            let g = Poly::gcd(&num, &den);
            if g.degree().unwrap_or(0) > 0 {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
        }
        let t = den.trailing().unwrap().clone();
        if !t.is_one() {
            let inv = t.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        QFun { num, den }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &QFun) -> Result<QFun> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: u32) -> QFun {
        QFun { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn eval(&self, q: &Rational) -> Result<Rational> {
        let d = self.den.eval(q);
        if d.is_zero() {
            return Err(Error::VanishingDenominator(q.to_string()));
        }
        Ok(self.num.eval(q) / d)
    }

    pub fn eval_f64(&self, q: f64) -> Result<f64> {
        let d = self.den.eval_f64(q);
        if d == 0.0 {
            return Err(Error::VanishingDenominator(q.to_string()));
        }
        Ok(self.num.eval_f64(q) / d)
    }

    /// Denominators with the common `q`-power stripped, used when forming a
    /// shared denominator for printing.
    pub(crate) fn parts(&self) -> (&Poly, &Poly) {
        (&self.num, &self.den)
    }
}

impl Zero for QFun {
    fn zero() -> Self {
        QFun { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QFun {
    fn one() -> Self {
        QFun { num: Poly::one(), den: Poly::one() }
    }
}

impl Add for &QFun {
    type Output = QFun;
    fn add(self, rhs: &QFun) -> QFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QFun::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_monomial() && rhs.den.is_monomial() {
            // both dens are q^a, q^b after canonicalization
            let a = self.den.degree().unwrap();
            let b = rhs.den.degree().unwrap();
            let k = a.max(b);
            let num = &self.num.shift_up(k - a) + &rhs.num.shift_up(k - b);
            return QFun::reduce(num, Poly::monomial(Rational::one(), k));
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        let sd = self.den.div_exact(&g);
        let rd = rhs.den.div_exact(&g);
        let num = &(&self.num * &rd) + &(&rhs.num * &sd);
        QFun::reduce(num, &self.den * &rd)
    }
}

impl Sub for &QFun {
    type Output = QFun;
    fn sub(self, rhs: &QFun) -> QFun {
        self + &(-rhs)
    }
}

impl Mul for &QFun {
    type Output = QFun;
    fn mul(self, rhs: &QFun) -> QFun {
        if self.is_zero() || rhs.is_zero() {
            return QFun::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QFun { num: &self.num * &rhs.num, den: Poly::one() };
        }
        QFun::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &QFun {
    type Output = QFun;
    fn neg(self) -> QFun {
        QFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Div for &QFun {
    type Output = QFun;
    /// Panics on a zero divisor; use [`QFun::checked_div`] for a `Result`.
    fn div(self, rhs: &QFun) -> QFun {
        self.checked_div(rhs).expect("QFun division by zero")
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, rhs: &'a $t) -> $t { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(QFun, Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for QFun {
    type Output = QFun;
    fn neg(self) -> QFun {
        -&self
    }
}

impl fmt::Debug for QFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::qfun_to_text(self))
    }
}

impl fmt::Display for QFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::qfun_to_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn quotient_of_cyclotomic_factors() {
        let a = QFun::one_minus(1, 4);
        let b = QFun::one_minus(1, 2);
        assert_eq!(&a / &b, QFun::from_poly(Poly::from_i64s(&[1, 0, 1])));
    }

    #[test]
    fn q_times_inverse_is_one() {
        assert_eq!(QFun::q() * QFun::q_pow(-1), QFun::one());
    }

    #[test]
    fn q_minus_inverse_canonical_form() {
        let x = QFun::q() - QFun::q_pow(-1);
        assert_eq!(x.num(), &Poly::from_i64s(&[-1, 0, 1]));
        assert_eq!(x.den(), &Poly::from_i64s(&[0, 1]));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(QFun::one().checked_div(&QFun::zero()), Err(Error::DivisionByZero));
        assert!(QFun::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn evaluation_at_rational_point() {
        let x = QFun::one().checked_div(&QFun::one_minus(1, 2)).unwrap();
        assert_eq!(x.eval(&r(1, 2)).unwrap(), r(4, 3));
        assert!(matches!(x.eval(&r(1, 1)), Err(Error::VanishingDenominator(_))));
    }

    #[test]
    fn denominator_trailing_coefficient_is_one() {
        let x = QFun::new(Poly::from_i64s(&[3]), Poly::from_i64s(&[0, 2, -2])).unwrap();
        assert_eq!(x.den().trailing(), Some(&Rational::one()));
        assert_eq!(x.den().valuation(), Some(1));
        assert_eq!(x.num(), &Poly::constant(r(3, 2)));
    }
}
