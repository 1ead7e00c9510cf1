//! Plain string rewriting with an explicit redex strategy.

use std::collections::BTreeMap;

use super::monomial::{Generator, NormalMonomial, Word};
use super::relations::{is_redex, measure};
use super::{Algebra, PolElement};
use crate::error::Result;
use crate::scalars::Coeff;

/// Which redex of a word is rewritten first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

fn find_redex(w: &[Generator], strategy: Strategy) -> Option<usize> {
    let mut it = (0..w.len().saturating_sub(1)).filter(|&i| is_redex(&w[i], &w[i + 1]));
    match strategy {
        Strategy::Leftmost => it.next(),
        Strategy::Rightmost => it.next_back(),
    }
}

impl<S: Coeff> Algebra<S> {
    /// Normal form by repeated redex rewriting, independent of the memoized
    /// letter-insertion path used by [`Algebra::normal_form`].
    pub fn normal_form_with(&self, w: &[Generator], strategy: Strategy) -> Result<PolElement<S>> {
        self.check_word(w)?;
        let mut pending: BTreeMap<Word, S> = BTreeMap::new();
        pending.insert(w.to_vec(), S::one());
        let mut out = PolElement::zero(self.shape);
        while let Some((word, c)) = pending.pop_last() {
            let Some(i) = find_redex(&word, strategy) else {
                let mut m = NormalMonomial::one(&self.shape);
                for g in &word {
                    let idx = self.shape.index(g.alpha, g.a);
                    if g.starred {
                        m.f[idx] += 1;
                    } else {
                        m.e[idx] += 1;
                    }
                }
                out.add_term(m, c);
                continue;
            };
            let before = measure(&word);
            for (rhs, k) in self.rule(word[i], word[i + 1]).expect("redex without rule") {
                let mut next = Vec::with_capacity(word.len());
                next.extend_from_slice(&word[..i]);
                next.extend_from_slice(rhs);
                next.extend_from_slice(&word[i + 2..]);
                assert!(measure(&next) < before, "rewrite step failed to decrease the termination measure");
                let v = c.clone() * k.clone();
                let slot = pending.entry(next).or_insert_with(S::zero);
                *slot = slot.clone() + v;
            }
            pending.retain(|_, v| !v.is_zero());
        }
        Ok(out)
    }
}
