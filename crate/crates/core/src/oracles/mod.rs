//! Independent reference computations for tests.
//!
//! Nothing here goes through the rewriting engine or the Fock fast path.
//! Sizes are capped, and the code is written to be easy to check by hand
//! rather than fast.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Generator, Shape};
use crate::error::{Error, Result};
use crate::scalars::{QFun, QUFun, Rational};

/// Polynomial in the commuting variables `z_{αa}` and `z̄_{αa}`.
///
/// Exponent vectors have length `2mn`. Slot `shape.index(α, a)` holds the
/// power of `z_{αa}` and slot `mn + shape.index(α, a)` the power of `z̄_{αa}`.
#[derive(Clone, PartialEq, Eq)]
pub struct CommutativePoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl CommutativePoly {
    pub fn zero(vars: usize) -> Self {
        CommutativePoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut p = CommutativePoly::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    pub fn one(vars: usize) -> Self {
        CommutativePoly::constant(vars, Rational::one())
    }

    pub fn variable(vars: usize, slot: usize) -> Self {
        let mut e = vec![0; vars];
        e[slot] = 1;
        let mut p = CommutativePoly::zero(vars);
        p.add_term(e, Rational::one());
        p
    }

    /// `z_{αa}` for the given shape.
    pub fn z(shape: &Shape, alpha: usize, a: usize) -> Self {
        CommutativePoly::variable(2 * shape.generator_count(), shape.index(alpha, a))
    }

    /// `z̄_{αa}` for the given shape.
    pub fn zbar(shape: &Shape, alpha: usize, a: usize) -> Self {
        let mn = shape.generator_count();
        CommutativePoly::variable(2 * mn, mn + shape.index(alpha, a))
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        assert_eq!(e.len(), self.vars, "exponent vector has the wrong length");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = CommutativePoly::zero(self.vars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = CommutativePoly::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Debug for CommutativePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}·{e:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sign of a permutation given as a list of distinct indices, by counting inversions.
fn sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All orderings of `0..k`, built by insertion.
fn orderings(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for x in 0..k {
        let mut next = Vec::new();
        for p in &out {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Increasing `k`-element subsets of `1..=n`.
fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = choose(n - 1, k);
    for mut s in choose(n - 1, k - 1) {
        s.push(n);
        out.push(s);
    }
    out
}

/// Leibniz determinant of the minor on `rows × cols`, with entries from `entry`.
fn leibniz(
    rows: &[usize],
    cols: &[usize],
    vars: usize,
    entry: impl Fn(usize, usize) -> CommutativePoly,
) -> CommutativePoly {
    let mut out = CommutativePoly::zero(vars);
    for p in orderings(rows.len()) {
        let mut term = CommutativePoly::constant(vars, Rational::from_integer(sign(&p).into()));
        for (i, &pi) in p.iter().enumerate() {
            term = term.mul(&entry(rows[i], cols[pi]));
        }
        out = out.add(&term);
    }
    out
}

fn check_size(shape: &Shape) -> Result<()> {
    if shape.m > 3 || shape.n > 3 {
        return Err(Error::InvalidParameter(format!("oracle is capped at 3x3, got {shape}")));
    }
    Ok(())
}

/// `1 + Σ_k (−1)^k Σ_{|I|=|J|=k} det(z_{IJ}) det(z̄_{IJ})`.
pub fn classical_det_expansion(shape: &Shape) -> Result<CommutativePoly> {
    check_size(shape)?;
    let vars = 2 * shape.generator_count();
    let mut out = CommutativePoly::one(vars);
    for k in 1..=shape.m {
        let sgn = Rational::from_integer(if k % 2 == 0 { 1.into() } else { (-1).into() });
        for rows in choose(shape.m, k) {
            for cols in choose(shape.n, k) {
                let d = leibniz(&rows, &cols, vars, |al, a| CommutativePoly::z(shape, al, a));
                let db = leibniz(&rows, &cols, vars, |al, a| CommutativePoly::zbar(shape, al, a));
                out = out.add(&d.mul(&db).scale(&sgn));
            }
        }
    }
    Ok(out)
}

/// `det(1 − z z̄ᵀ)` by cofactor expansion along the first row, where
/// `(z z̄ᵀ)_{αβ} = Σ_a z_{αa} z̄_{βa}`.
pub fn classical_det_cofactor(shape: &Shape) -> Result<CommutativePoly> {
    check_size(shape)?;
    let vars = 2 * shape.generator_count();
    let entry = |al: usize, be: usize| {
        let mut e = if al == be { CommutativePoly::one(vars) } else { CommutativePoly::zero(vars) };
        for a in 1..=shape.n {
            e = e.sub(&CommutativePoly::z(shape, al, a).mul(&CommutativePoly::zbar(shape, be, a)));
        }
        e
    };
    let matrix: Vec<Vec<CommutativePoly>> =
        (1..=shape.m).map(|al| (1..=shape.m).map(|be| entry(al, be)).collect()).collect();
    Ok(cofactor(&matrix, vars))
}

fn cofactor(m: &[Vec<CommutativePoly>], vars: usize) -> CommutativePoly {
    match m.len() {
        0 => CommutativePoly::one(vars),
        1 => m[0][0].clone(),
        k => {
            let mut out = CommutativePoly::zero(vars);
            for j in 0..k {
                let minor: Vec<Vec<CommutativePoly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let t = m[0][j].mul(&cofactor(&minor, vars));
                out = if j % 2 == 0 { out.add(&t) } else { out.sub(&t) };
            }
            out
        }
    }
}

/// `∏_{r<i}(1 − u q^{2r}) / ∏_{r=1}^{i}(1 − q^{2r})`.
pub fn q_binomial_coefficient_series(i: usize) -> QUFun {
    let mut num = QUFun::one();
    let mut den = QFun::one();
    for r in 0..i {
        num = &num * &QUFun::from_coeffs(vec![QFun::one(), -QFun::q_pow(2 * r as i64)]);
        den = den * (QFun::one() - QFun::q_pow(2 * (r as i64 + 1)));
    }
    num.div_qfun(&den).expect("product of 1 − q^{2r} is nonzero")
}

/// `binomial(λ + i − 1, i)`, the degree-`i` coefficient of `(1 − x)^{−λ}`.
pub fn classical_kernel_coefficient(lambda: &Rational, i: usize) -> Rational {
    let mut c = Rational::one();
    for r in 1..=i {
        let r = Rational::from_integer((r as i64).into());
        c = c * (lambda + &r - Rational::one()) / r;
    }
    c
}

/// `R(i, j, i', j')` from the mixed commutation relation.
fn r_entry(i: usize, j: usize, i2: usize, j2: usize) -> QFun {
    if i != j && i == i2 && j == j2 {
        QFun::q_pow(-1)
    } else if i == j && j == i2 && i2 == j2 {
        QFun::one()
    } else if i == j && i2 == j2 && j2 > j {
        -(QFun::q_pow(-2) - QFun::one())
    } else {
        QFun::zero()
    }
}

/// `(z_b^β)* z_a^α = q² Σ R(b,a,b',a') R(β,α,β',α') z_{a'}^{α'} (z_{b'}^{β'})* + (1−q²) δ_{ab} δ^{αβ}`.
fn mixed(shape: &Shape, star: Generator, z: Generator) -> Vec<(Vec<Generator>, QFun)> {
    let (b, beta, a, alpha) = (star.a, star.alpha, z.a, z.alpha);
    let mut out = Vec::new();
    for a2 in 1..=shape.n {
        for b2 in 1..=shape.n {
            let rc = r_entry(b, a, b2, a2);
            if rc.is_zero() {
                continue;
            }
            for al2 in 1..=shape.m {
                for be2 in 1..=shape.m {
                    let rr = r_entry(beta, alpha, be2, al2);
                    if rr.is_zero() {
                        continue;
                    }
                    out.push((vec![Generator::z(al2, a2), Generator::zs(be2, b2)], QFun::q_pow(2) * rc.clone() * rr));
                }
            }
        }
    }
    if a == b && alpha == beta {
        out.push((vec![], QFun::one() - QFun::q_pow(2)));
    }
    out
}

/// `f0 · w · f0` reduced to a multiple of `f0`: move the rightmost star
/// to the right until it hits `f0` and dies; a surviving holomorphic
/// word is killed by the left `f0` unless it is empty.
fn vacuum_expectation(shape: &Shape, w: Vec<Generator>) -> QFun {
    let mut total = QFun::zero();
    let mut stack = vec![(w, QFun::one())];
    while let Some((w, c)) = stack.pop() {
        match w.iter().rposition(|g| g.starred) {
            None => {
                if w.is_empty() {
                    total = total + c;
                }
            }
            Some(p) if p + 1 == w.len() => {}
            Some(p) => {
                for (mid, k) in mixed(shape, w[p], w[p + 1]) {
                    let mut next = w[..p].to_vec();
                    next.extend(mid);
                    next.extend_from_slice(&w[p + 2..]);
                    stack.push((next, c.clone() * k));
                }
            }
        }
    }
    total
}

/// `(w1 f0, w2 f0)` by exhaustive rewriting of `f0 · w1* · w2 · f0`.
pub fn brute_force_inner(shape: &Shape, w1: &[Generator], w2: &[Generator]) -> Result<QFun> {
    if shape.m > 2 || shape.n > 2 {
        return Err(Error::InvalidParameter(format!("brute-force inner product is capped at 2x2, got {shape}")));
    }
    if w1.len() > 5 || w2.len() > 5 {
        return Err(Error::InvalidParameter("brute-force inner product is capped at words of length 5".into()));
    }
    for g in w1.iter().chain(w2) {
        g.check(shape)?;
    }
    let mut w: Vec<Generator> = w1.iter().rev().map(|g| g.star()).collect();
    w.extend_from_slice(w2);
    Ok(vacuum_expectation(shape, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational;

    fn shape(m: usize, n: usize) -> Shape {
        Shape::new(m, n).unwrap()
    }

    #[test]
    fn permutation_signs() {
        let all = orderings(3);
        assert_eq!(all.len(), 6);
        assert_eq!(all.iter().map(|p| sign(p)).sum::<i64>(), 0);
        assert_eq!(sign(&[1, 0, 2]), -1);
        assert_eq!(sign(&[1, 2, 0]), 1);
        assert_eq!(choose(4, 2).len(), 6);
    }

    #[test]
    fn det_expansion_small_shapes() {
        let s = shape(1, 1);
        let expected = CommutativePoly::one(2).sub(&CommutativePoly::z(&s, 1, 1).mul(&CommutativePoly::zbar(&s, 1, 1)));
        assert_eq!(classical_det_expansion(&s).unwrap(), expected);

        let s = shape(1, 2);
        let mut expected = CommutativePoly::one(4);
        for a in 1..=2 {
            expected = expected.sub(&CommutativePoly::z(&s, 1, a).mul(&CommutativePoly::zbar(&s, 1, a)));
        }
        assert_eq!(classical_det_expansion(&s).unwrap(), expected);
    }

    #[test]
    fn det_expansion_on_the_square() {
        let s = shape(2, 2);
        let z = |al, a| CommutativePoly::z(&s, al, a);
        let zb = |al, a| CommutativePoly::zbar(&s, al, a);
        let mut expected = CommutativePoly::one(8);
        for al in 1..=2 {
            for a in 1..=2 {
                expected = expected.sub(&z(al, a).mul(&zb(al, a)));
            }
        }
        let d = z(1, 1).mul(&z(2, 2)).sub(&z(1, 2).mul(&z(2, 1)));
        let db = zb(1, 1).mul(&zb(2, 2)).sub(&zb(1, 2).mul(&zb(2, 1)));
        expected = expected.add(&d.mul(&db));
        assert_eq!(classical_det_expansion(&s).unwrap(), expected);
    }

    #[test]
    fn minor_expansion_matches_cofactor_determinant() {
        for (m, n) in [(1, 1), (1, 3), (2, 2), (2, 3), (3, 3)] {
            let s = shape(m, n);
            assert_eq!(classical_det_expansion(&s).unwrap(), classical_det_cofactor(&s).unwrap(), "shape {s}");
        }
        assert!(classical_det_expansion(&shape(4, 4)).is_err());
    }

    #[test]
    fn q_binomial_terms() {
        assert_eq!(q_binomial_coefficient_series(0), QUFun::one());
        let one_minus_u = QUFun::from_coeffs(vec![QFun::one(), -QFun::one()]);
        assert_eq!(q_binomial_coefficient_series(1), one_minus_u.div_qfun(&QFun::one_minus(1, 2)).unwrap());
        let num = &one_minus_u * &QUFun::from_coeffs(vec![QFun::one(), -QFun::q_pow(2)]);
        let den = QFun::one_minus(1, 2) * QFun::one_minus(1, 4);
        assert_eq!(q_binomial_coefficient_series(2), num.div_qfun(&den).unwrap());
    }

    #[test]
    fn classical_kernel_coefficients() {
        assert_eq!(classical_kernel_coefficient(&rational(2, 1), 3), rational(4, 1));
        assert_eq!(classical_kernel_coefficient(&rational(3, 1), 2), rational(6, 1));
        assert_eq!(classical_kernel_coefficient(&rational(2, 1), 0), rational(1, 1));
        assert_eq!(classical_kernel_coefficient(&rational(1, 2), 2), rational(3, 8));
    }

    #[test]
    fn brute_force_examples() {
        let s = shape(1, 1);
        let z = Generator::z(1, 1);
        assert_eq!(brute_force_inner(&s, &[z], &[z]).unwrap(), QFun::one_minus(1, 2));
        assert_eq!(brute_force_inner(&s, &[], &[]).unwrap(), QFun::one());
        assert_eq!(brute_force_inner(&s, &[z, z], &[z]).unwrap(), QFun::zero());

        let s = shape(1, 2);
        assert_eq!(brute_force_inner(&s, &[Generator::z(1, 1)], &[Generator::z(1, 2)]).unwrap(), QFun::zero());
        assert!(brute_force_inner(&shape(3, 3), &[], &[]).is_err());
        assert!(brute_force_inner(&s, &[z; 6], &[]).is_err());
    }

    #[test]
    fn disc_norms_are_q_pochhammer_products() {
        let s = shape(1, 1);
        let z = Generator::z(1, 1);
        for k in 0..=5 {
            let expected = (1..=k).fold(QFun::one(), |acc, j| acc * QFun::one_minus(1, 2 * j));
            assert_eq!(brute_force_inner(&s, &vec![z; k], &vec![z; k]).unwrap(), expected, "k = {k}");
        }
    }
}
