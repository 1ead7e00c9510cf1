use std::fmt;

use serde::{Deserialize, Serialize};

use super::shape::Shape;
use crate::error::{Error, Result};

/// `z_a^α` (`starred = false`) or its adjoint `(z_a^α)*`. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub alpha: usize,
    pub a: usize,
    pub starred: bool,
}

pub type Word = Vec<Generator>;

impl Generator {
    pub fn z(alpha: usize, a: usize) -> Self {
        Generator { alpha, a, starred: false }
    }

    pub fn zs(alpha: usize, a: usize) -> Self {
        Generator { alpha, a, starred: true }
    }

    /// Position in the canonical order: column first, then row.
    pub fn key(&self) -> (usize, usize) {
        (self.a, self.alpha)
    }

    pub fn star(self) -> Self {
        Generator { starred: !self.starred, ..self }
    }

    pub fn check(&self, shape: &Shape) -> Result<()> {
        if self.alpha == 0 || self.alpha > shape.m || self.a == 0 || self.a > shape.n {
            return Err(Error::IndexOutOfRange(format!(
                "generator (alpha={}, a={}) outside shape {shape}",
                self.alpha, self.a
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.starred {
            write!(f, "(z_{}^{})*", self.a, self.alpha)
        } else {
            write!(f, "z_{}^{}", self.a, self.alpha)
        }
    }
}

/// A PBW basis element `z^E (z^F)*`: the holomorphic generators in canonical
/// order with exponents `e`, followed by the starred generators in canonical
/// order with exponents `f`. Both vectors are indexed by [`Shape::index`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalMonomial {
    pub e: Vec<u32>,
    pub f: Vec<u32>,
}

impl NormalMonomial {
    pub fn one(shape: &Shape) -> Self {
        let k = shape.generator_count();
        NormalMonomial { e: vec![0; k], f: vec![0; k] }
    }

    pub fn holomorphic(e: Vec<u32>) -> Self {
        let k = e.len();
        NormalMonomial { e, f: vec![0; k] }
    }

    pub fn antiholomorphic(f: Vec<u32>) -> Self {
        let k = f.len();
        NormalMonomial { e: vec![0; k], f }
    }

    pub fn generator(shape: &Shape, g: Generator) -> Self {
        let mut m = NormalMonomial::one(shape);
        let i = shape.index(g.alpha, g.a);
        if g.starred {
            m.f[i] = 1;
        } else {
            m.e[i] = 1;
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.e.iter().chain(&self.f).all(|&x| x == 0)
    }

    pub fn is_holomorphic(&self) -> bool {
        self.f.iter().all(|&x| x == 0)
    }

    pub fn is_antiholomorphic(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    pub fn z_part_degree(&self) -> u32 {
        self.e.iter().sum()
    }

    pub fn star_part_degree(&self) -> u32 {
        self.f.iter().sum()
    }

    /// `ΣE − ΣF`
    pub fn z_degree(&self) -> i64 {
        self.z_part_degree() as i64 - self.star_part_degree() as i64
    }

    pub fn total_degree(&self) -> u32 {
        self.z_part_degree() + self.star_part_degree()
    }

    /// The canonical word of this monomial.
    pub fn word(&self, shape: &Shape) -> Word {
        let mut w = Vec::with_capacity(self.total_degree() as usize);
        for (starred, exps) in [(false, &self.e), (true, &self.f)] {
            for (i, &x) in exps.iter().enumerate() {
                let (alpha, a) = shape.position(i);
                for _ in 0..x {
                    w.push(Generator { alpha, a, starred });
                }
            }
        }
        w
    }

    /// Row sums and column sums of `E` minus those of `F`; preserved by every
    /// defining relation.
    pub fn weight_vector(&self, shape: &Shape) -> (Vec<i64>, Vec<i64>) {
        let mut rows = vec![0i64; shape.m];
        let mut cols = vec![0i64; shape.n];
        for i in 0..shape.generator_count() {
            let (alpha, a) = shape.position(i);
            let d = self.e[i] as i64 - self.f[i] as i64;
            rows[alpha - 1] += d;
            cols[a - 1] += d;
        }
        (rows, cols)
    }

    /// Row and column sums of `E` and of `F` separately.
    pub fn multidegree(&self, shape: &Shape) -> [Vec<u32>; 4] {
        let mut out = [vec![0; shape.m], vec![0; shape.n], vec![0; shape.m], vec![0; shape.n]];
        for i in 0..shape.generator_count() {
            let (alpha, a) = shape.position(i);
            out[0][alpha - 1] += self.e[i];
            out[1][a - 1] += self.e[i];
            out[2][alpha - 1] += self.f[i];
            out[3][a - 1] += self.f[i];
        }
        out
    }

    pub(crate) fn first_z(&self) -> Option<usize> {
        self.e.iter().position(|&x| x > 0)
    }

    pub(crate) fn first_star(&self) -> Option<usize> {
        self.f.iter().position(|&x| x > 0)
    }
}

/// Sparse `[alpha, a, exponent]` triples ordered by `(a, α)`.
pub fn sparse_triples(shape: &Shape, exps: &[u32]) -> Vec<[usize; 3]> {
    exps.iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(i, &x)| {
            let (alpha, a) = shape.position(i);
            [alpha, a, x as usize]
        })
        .collect()
}

pub fn exponents_from_triples(shape: &Shape, triples: &[[usize; 3]]) -> Result<Vec<u32>> {
    let mut e = vec![0u32; shape.generator_count()];
    for &[alpha, a, x] in triples {
        Generator::z(alpha, a).check(shape)?;
        e[shape.index(alpha, a)] += x as u32;
    }
    Ok(e)
}

/// Sort key used for stable output: the serialized triples of both parts.
pub fn serial_key(shape: &Shape, m: &NormalMonomial) -> (Vec<[usize; 3]>, Vec<[usize; 3]>) {
    (sparse_triples(shape, &m.e), sparse_triples(shape, &m.f))
}

pub fn format_monomial(shape: &Shape, m: &NormalMonomial) -> String {
    if m.is_one() {
        return "1".into();
    }
    let mut parts = Vec::new();
    for (starred, exps) in [(false, &m.e), (true, &m.f)] {
        for (i, &x) in exps.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let (alpha, a) = shape.position(i);
            let g = Generator { alpha, a, starred };
            if x == 1 {
                parts.push(g.to_string());
            } else {
                parts.push(format!("({g})^{x}"));
            }
        }
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_word_order() {
        let s = Shape::new(2, 2).unwrap();
        let mut m = NormalMonomial::one(&s);
        m.e[s.index(2, 1)] = 1;
        m.e[s.index(1, 2)] = 2;
        m.f[s.index(1, 1)] = 1;
        let w = m.word(&s);
        assert_eq!(w, vec![Generator::z(2, 1), Generator::z(1, 2), Generator::z(1, 2), Generator::zs(1, 1)]);
        assert_eq!(m.z_degree(), 2);
        assert_eq!(m.total_degree(), 4);
        assert_eq!(sparse_triples(&s, &m.e), vec![[2, 1, 1], [1, 2, 2]]);
    }
}
