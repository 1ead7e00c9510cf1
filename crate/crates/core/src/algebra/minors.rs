//! Quantum minors and the q-analogue `y` of `det(1 − zz*)`.

use super::monomial::Generator;
use super::{Algebra, PolElement};
use crate::error::{Error, Result};
use crate::scalars::Coeff;

/// All permutations of `0..k` with their inversion counts.
pub fn permutations(k: usize) -> Vec<(Vec<usize>, usize)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, usize)>) {
        if prefix.len() == used.len() {
            let inv = (0..prefix.len())
                .flat_map(|i| (i + 1..prefix.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| prefix[i] > prefix[j])
                .count();
            out.push((prefix.clone(), inv));
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}

/// Increasing `k`-subsets of `1..=n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

fn check_index_set(set: &[usize], bound: usize, what: &str) -> Result<()> {
    if set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(format!("{what} must be strictly increasing: {set:?}")));
    }
    if set.iter().any(|&i| i == 0 || i > bound) {
        return Err(Error::IndexOutOfRange(format!("{what} {set:?} outside 1..={bound}")));
    }
    Ok(())
}

impl<S: Coeff> Algebra<S> {
    /// `Σ_{s∈S_k} (−q)^{l(s)} z_{a_1}^{α_{s(1)}} ⋯ z_{a_k}^{α_{s(k)}}` for row set
    /// `rows = {α_1 < … < α_k}` and column set `cols = {a_1 < … < a_k}`.
    pub fn q_minor(&self, rows: &[usize], cols: &[usize]) -> Result<PolElement<S>> {
        let shape = self.shape();
        if rows.len() != cols.len() {
            return Err(Error::InvalidParameter("row and column sets differ in size".into()));
        }
        if rows.is_empty() || rows.len() > shape.m {
            return Err(Error::InvalidParameter(format!("minor order must lie in 1..={}", shape.m)));
        }
        check_index_set(rows, shape.m, "rows")?;
        check_index_set(cols, shape.n, "cols")?;
        let minus_q = -self.q().clone();
        let mut out = PolElement::zero(shape);
        for (perm, inv) in permutations(rows.len()) {
            let word: Vec<Generator> = cols.iter().zip(&perm).map(|(&a, &s)| Generator::z(rows[s], a)).collect();
            let mut c = S::one();
            for _ in 0..inv {
                c = c * minus_q.clone();
            }
            out = out.add(&self.normal_form(&word)?.scale(&c));
        }
        Ok(out)
    }

    /// `y = 1 + Σ_{k=1}^m (−1)^k Σ_{J',J''} z^{∧k}_{J''}^{J'} · (z^{∧k}_{J''}^{J'})*`
    pub fn y_element(&self) -> PolElement<S> {
        let shape = self.shape();
        let mut y = self.one();
        for k in 1..=shape.m.min(shape.n) {
            let sign = if k % 2 == 0 { S::one() } else { -S::one() };
            for rows in subsets(shape.m, k) {
                for cols in subsets(shape.n, k) {
                    let minor = self.q_minor(&rows, &cols).expect("valid index sets");
                    let term = self.multiply(&minor, &self.star(&minor)).expect("same shape");
                    y = y.add(&term.scale(&sign));
                }
            }
        }
        y
    }
}
