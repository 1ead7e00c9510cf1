use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported number of generators `m·n`.
pub const MAX_GENERATORS: usize = 16;

/// Matrix size: `m` rows (upper index `α`), `n` columns (lower index `a`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    pub m: usize,
    pub n: usize,
}

impl Shape {
    /// A shape for the matrix ball: `1 <= m <= n`.
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m > n {
            return Err(Error::InvalidShape(format!("m <= n required, got m={m}, n={n}")));
        }
        Shape::relations_only(m, n)
    }

    /// A shape for the quantum matrix relations alone, without the `m <= n`
    /// requirement of the ball. Minors, `y` and the Fock space expect a
    /// shape from [`Shape::new`].
    pub fn relations_only(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidShape(format!("m and n must be positive, got m={m}, n={n}")));
        }
        if m * n > MAX_GENERATORS {
            return Err(Error::InvalidShape(format!(
                "m*n = {} exceeds the limit of {MAX_GENERATORS} generators",
                m * n
            )));
        }
        Ok(Shape { m, n })
    }

    pub fn generator_count(&self) -> usize {
        self.m * self.n
    }

    /// Flat index of `z_a^α` in canonical order (column `a` first, then row `α`).
    pub fn index(&self, alpha: usize, a: usize) -> usize {
        (a - 1) * self.m + (alpha - 1)
    }

    /// Inverse of [`Shape::index`]: `(alpha, a)`, 1-based.
    pub fn position(&self, idx: usize) -> (usize, usize) {
        (idx % self.m + 1, idx / self.m + 1)
    }

    /// `m + n + 1 − α − a` for every generator, in canonical order: the
    /// eigenvalue of `Γ(ρ̌)` on `z_a^α f0`.
    pub fn weights(&self) -> Vec<u64> {
        (0..self.generator_count())
            .map(|i| {
                let (alpha, a) = self.position(i);
                (self.m + self.n + 1 - alpha - a) as u64
            })
            .collect()
    }

    /// All exponent vectors of total degree `d`, ordered by their sparse
    /// serialization.
    pub fn exponents_of_degree(&self, d: usize) -> Vec<Vec<u32>> {
        let k = self.generator_count();
        let mut out = Vec::new();
        let mut cur = vec![0u32; k];
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(cur.clone());
                cur[pos] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, out);
            }
            cur[pos] = 0;
        }
        rec(0, d as u32, &mut cur, &mut out);
        let shape = *self;
        out.sort_by_cached_key(|e| super::monomial::sparse_triples(&shape, e));
        out
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.m, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(Shape::new(2, 1).is_err());
        assert!(Shape::new(0, 3).is_err());
        assert!(Shape::new(5, 5).is_err());
        assert!(Shape::relations_only(2, 1).is_ok());
    }

    #[test]
    fn index_round_trip_and_weights() {
        let s = Shape::new(2, 3).unwrap();
        for i in 0..6 {
            let (alpha, a) = s.position(i);
            assert_eq!(s.index(alpha, a), i);
        }
        // order: z_1^1 z_1^2 z_2^1 z_2^2 z_3^1 z_3^2
        assert_eq!(s.weights(), vec![4, 3, 3, 2, 2, 1]);
    }

    #[test]
    fn monomial_counts() {
        let s = Shape::new(2, 2).unwrap();
        assert_eq!(s.exponents_of_degree(0).len(), 1);
        assert_eq!(s.exponents_of_degree(1).len(), 4);
        assert_eq!(s.exponents_of_degree(3).len(), 20);
    }
}
