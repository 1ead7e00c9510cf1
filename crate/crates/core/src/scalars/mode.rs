use num_traits::{One, Signed, Zero};

use super::{QFun, QUFun, Rational};
use crate::error::{Error, Result};

/// How scalars are represented or evaluated.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarMode {
    /// Rational functions in formal `q`.
    ExactQ,
    /// Polynomials in formal `u = q^{2λ}` over `ℚ(q)`.
    ExactQU,
    /// Exact substitution of rational `q` and `u`.
    NumericExact { q: Rational, u: Rational },
    /// IEEE evaluation.
    NumericFloat { q: f64, u: f64 },
}

impl ScalarMode {
    pub fn numeric_exact(q: Rational, u: Rational) -> Result<Self> {
        check_q(&q)?;
        Ok(ScalarMode::NumericExact { q, u })
    }

    pub fn numeric_float(q: f64, u: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParameter(format!("q must lie in (0,1), got {q}")));
        }
        Ok(ScalarMode::NumericFloat { q, u })
    }
}

/// Rejects `q` outside the open unit interval.
pub fn check_q(q: &Rational) -> Result<()> {
    if q.is_positive() && *q < Rational::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("q must lie in (0,1), got {q}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Q(QFun),
    QU(QUFun),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

/// Substitute numeric values for the formal variables.
pub fn evaluate(s: &Scalar, mode: &ScalarMode) -> Result<Value> {
    match (s, mode) {
        (Scalar::Q(x), ScalarMode::NumericExact { q, .. }) => {
            check_q(q)?;
            x.eval(q).map(Value::Exact)
        }
        (Scalar::QU(x), ScalarMode::NumericExact { q, u }) => {
            check_q(q)?;
            x.eval(q, u).map(Value::Exact)
        }
        (Scalar::Q(x), ScalarMode::NumericFloat { q, .. }) => x.eval_f64(*q).map(Value::Float),
        (Scalar::QU(x), ScalarMode::NumericFloat { q, u }) => x.eval_f64(*q, *u).map(Value::Float),
        (_, m) => Err(Error::InvalidParameter(format!("evaluation needs a numeric mode, got {m:?}"))),
    }
}

impl Value {
    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(r) => r.is_zero(),
            Value::Float(f) => *f == 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational;

    #[test]
    fn evaluate_examples() {
        let half = rational(1, 2);
        let inv = QFun::one().checked_div(&QFun::one_minus(1, 2)).unwrap();
        let mode = ScalarMode::numeric_exact(half.clone(), rational(1, 64)).unwrap();
        assert_eq!(evaluate(&Scalar::Q(inv), &mode).unwrap(), Value::Exact(rational(4, 3)));

        let c = &QUFun::one() - &QUFun::u().scale(&QFun::q_pow(-2));
        assert_eq!(evaluate(&Scalar::QU(c), &mode).unwrap(), Value::Exact(rational(15, 16)));

        // q^{2(λ-1)}(1-q^2)/(1-q^{2λ}) at q = 1/2, λ = 2
        let closed = QUFun::u().scale(&(QFun::q_pow(-2) * QFun::one_minus(1, 2)));
        let lam2 = ScalarMode::numeric_exact(half.clone(), rational(1, 16)).unwrap();
        let top = evaluate(&Scalar::QU(closed), &lam2).unwrap();
        let bottom = evaluate(&Scalar::QU(&QUFun::one() - &QUFun::u()), &lam2).unwrap();
        let (Value::Exact(t), Value::Exact(b)) = (top, bottom) else { unreachable!() };
        assert_eq!(t / b, rational(1, 5));
    }

    #[test]
    fn numeric_modes_reject_q_outside_unit_interval() {
        assert!(ScalarMode::numeric_exact(rational(1, 1), rational(0, 1)).is_err());
        assert!(ScalarMode::numeric_exact(rational(0, 1), rational(0, 1)).is_err());
        assert!(ScalarMode::numeric_float(1.5, 0.0).is_err());
        assert!(evaluate(&Scalar::Q(QFun::q()), &ScalarMode::ExactQ).is_err());
    }

    #[test]
    fn vanishing_denominator_is_reported() {
        let inv = QFun::one().checked_div(&QFun::one_minus(1, 2)).unwrap();
        let mode = ScalarMode::NumericExact { q: rational(-1, 1), u: rational(0, 1) };
        // bypasses the constructor to reach the evaluation error path
        assert!(evaluate(&Scalar::Q(inv.clone()), &mode).is_err());
        assert!(matches!(inv.eval(&rational(1, 1)), Err(Error::VanishingDenominator(_))));
    }
}
