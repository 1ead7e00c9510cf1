//! Integer Laurent polynomials in `q`: the coefficients of the defining
//! relations before they are instantiated in a concrete scalar type.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg};

use crate::scalars::Coeff;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<i32, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn monomial(c: i64, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(k, c);
        }
        Laurent { terms }
    }

    pub fn one() -> Self {
        Laurent::monomial(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Inverse of `±q^k`; `None` for anything else.
    pub fn inverse_monomial(&self) -> Option<Laurent> {
        match self.terms.iter().collect::<Vec<_>>().as_slice() {
            [(&k, &c)] if c == 1 || c == -1 => Some(Laurent::monomial(c, -k)),
            _ => None,
        }
    }

    pub fn instantiate<S: Coeff>(&self, q: &S, q_inv: &S) -> S {
        let mut acc = S::zero();
        for (&k, &c) in &self.terms {
            let base = if k >= 0 { q } else { q_inv };
            let mut p = S::one();
            for _ in 0..k.unsigned_abs() {
                p = p * base.clone();
            }
            acc = acc + S::from_i64(c) * p;
        }
        acc
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut terms = self.terms.clone();
        for (&k, &c) in &rhs.terms {
            let slot = terms.entry(k).or_insert(0);
            *slot += c;
            if *slot == 0 {
                terms.remove(&k);
            }
        }
        Laurent { terms }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut acc = Laurent::zero();
        for (&i, &a) in &self.terms {
            for (&j, &b) in &rhs.terms {
                acc = &acc + &Laurent::monomial(a * b, i + j);
            }
        }
        acc
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect() }
    }
}
