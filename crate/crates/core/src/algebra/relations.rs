//! The quadratic defining relations as two-letter rewriting rules.
//!
//! A pair `x y` of adjacent generators is a *redex* when a starred
//! generator stands left of an unstarred one, or when both have the same
//! type and `x` comes after `y` in the canonical order. Every redex has a
//! rule `x y -> Σ c_i w_i` with words `w_i` of length 2 or 0 that are
//! smaller under the termination measure of [`measure`].
//!
//! - holomorphic pairs: the q-commutation relations of the quantum matrix
//!   algebra, solved for the out-of-order product;
//! - starred pairs: the involution applied to the holomorphic rules;
//! - mixed pairs `(z_b^β)* z_a^α`: the `R`-matrix relation with the
//!   `(1-q²)δ_{ab}δ^{αβ}` constant term.

use std::collections::HashMap;

use super::laurent::Laurent;
use super::monomial::{Generator, Word};
use super::shape::Shape;

pub type RuleRhs = Vec<(Word, Laurent)>;

pub fn is_redex(x: &Generator, y: &Generator) -> bool {
    match (x.starred, y.starred) {
        (true, false) => true,
        (false, true) => false,
        _ => x.key() > y.key(),
    }
}

/// The `R` table on four indices.
pub fn r_coefficient(i: usize, j: usize, ip: usize, jp: usize) -> Laurent {
    if i != j && i == ip && j == jp {
        Laurent::monomial(1, -1)
    } else if i == j && j == ip && ip == jp {
        Laurent::one()
    } else if i == j && ip == jp && jp > j {
        // -(q^-2 - 1)
        &Laurent::one() + &Laurent::monomial(-1, -2)
    } else {
        Laurent::zero()
    }
}

/// `x y` for unstarred `x = z_c^γ`, `y = z_d^δ` with `x` after `y`.
fn holomorphic_rule(x: Generator, y: Generator) -> RuleRhs {
    let (c, gamma) = (x.a, x.alpha);
    let (d, delta) = (y.a, y.alpha);
    let swapped = vec![y, x];
    if c == d || gamma == delta {
        // z_a^α z_a^β = q z_a^β z_a^α (α<β) and z_a^α z_b^α = q z_b^α z_a^α (a<b)
        vec![(swapped, Laurent::monomial(1, -1))]
    } else if gamma < delta {
        // c > d, γ < δ: the generators commute
        vec![(swapped, Laurent::one())]
    } else {
        // c > d, γ > δ: z_d^δ z_c^γ − z_c^γ z_d^δ = (q − q^-1) z_d^γ z_c^δ
        let q_minus_qinv = &Laurent::monomial(1, 1) + &Laurent::monomial(-1, -1);
        vec![(swapped, Laurent::one()), (vec![Generator::z(gamma, d), Generator::z(delta, c)], -&q_minus_qinv)]
    }
}

/// `x* y*` with `x` after `y`, obtained by applying the involution to the
/// holomorphic rule for `x y`.
fn starred_rule(x: Generator, y: Generator) -> RuleRhs {
    let x0 = x.star();
    let y0 = y.star();
    let base = holomorphic_rule(x0, y0);
    // x y = c0 (y x) + Σ c_i w_i   ⇒   y* x* = c0 x* y* + Σ c_i w_i*
    //                              ⇒   x* y* = c0^-1 (y* x*) − c0^-1 Σ c_i w_i*
    let c0_inv = base[0].1.inverse_monomial().expect("leading coefficient is ±q^k");
    let mut out: RuleRhs = vec![(vec![y, x], c0_inv.clone())];
    for (w, c) in base.iter().skip(1) {
        let adj: Word = w.iter().rev().map(|g| g.star()).collect();
        let coeff = -&(&c0_inv * c);
        if is_redex(&adj[0], &adj[1]) {
            for (w2, c2) in starred_rule(adj[0], adj[1]) {
                out.push((w2, &coeff * &c2));
            }
        } else {
            out.push((adj, coeff));
        }
    }
    out
}

/// `(z_b^β)* z_a^α = q² Σ R(b,a,b',a') R(β,α,β',α') z_{a'}^{α'} (z_{b'}^{β'})* + (1−q²)δ_{ab}δ^{αβ}`
fn mixed_rule(shape: &Shape, x: Generator, y: Generator) -> RuleRhs {
    let (b, beta) = (x.a, x.alpha);
    let (a, alpha) = (y.a, y.alpha);
    let q2 = Laurent::monomial(1, 2);
    let mut out = RuleRhs::new();
    for ap in 1..=shape.n {
        for bp in 1..=shape.n {
            let rc = r_coefficient(b, a, bp, ap);
            if rc.is_zero() {
                continue;
            }
            for alphap in 1..=shape.m {
                for betap in 1..=shape.m {
                    let rr = r_coefficient(beta, alpha, betap, alphap);
                    if rr.is_zero() {
                        continue;
                    }
                    let c = &q2 * &(&rc * &rr);
                    out.push((vec![Generator::z(alphap, ap), Generator::zs(betap, bp)], c));
                }
            }
        }
    }
    if a == b && alpha == beta {
        out.push((Vec::new(), &Laurent::one() + &Laurent::monomial(-1, 2)));
    }
    out
}

/// Rules for every redex pair of a shape.
pub fn rule_table(shape: &Shape) -> HashMap<(Generator, Generator), RuleRhs> {
    let mut gens = Vec::new();
    for a in 1..=shape.n {
        for alpha in 1..=shape.m {
            gens.push(Generator::z(alpha, a));
            gens.push(Generator::zs(alpha, a));
        }
    }
    let mut table = HashMap::new();
    for &x in &gens {
        for &y in &gens {
            if !is_redex(&x, &y) {
                continue;
            }
            let rhs = match (x.starred, y.starred) {
                (false, false) => holomorphic_rule(x, y),
                (true, true) => starred_rule(x, y),
                (true, false) => mixed_rule(shape, x, y),
                (false, true) => unreachable!(),
            };
            table.insert((x, y), rhs);
        }
    }
    table
}

/// Termination measure of a word, compared lexicographically:
/// starred-before-unstarred pairs, then `Σ a·α` over all letters, then
/// inversions among letters of equal type. Every rule strictly decreases it.
pub fn measure(w: &[Generator]) -> (usize, usize, usize) {
    let mut mixed = 0;
    let mut inversions = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i].starred && !w[j].starred {
                mixed += 1;
            } else if w[i].starred == w[j].starred && w[i].key() > w[j].key() {
                inversions += 1;
            }
        }
    }
    let weight = w.iter().map(|g| g.a * g.alpha).sum();
    (mixed, weight, inversions)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_table_entries() {
        assert_eq!(r_coefficient(1, 2, 1, 2), Laurent::monomial(1, -1));
        assert_eq!(r_coefficient(2, 2, 2, 2), Laurent::one());
        assert_eq!(r_coefficient(1, 1, 2, 2), &Laurent::one() + &Laurent::monomial(-1, -2));
        assert!(r_coefficient(2, 2, 1, 1).is_zero());
        assert!(r_coefficient(1, 2, 2, 1).is_zero());
    }

    #[test]
    fn every_rule_decreases_the_measure() {
        for (m, n) in [(1, 1), (2, 2), (2, 3), (3, 3)] {
            let shape = Shape::new(m, n).unwrap();
            for ((x, y), rhs) in rule_table(&shape) {
                let before = measure(&[x, y]);
                for (w, c) in rhs {
                    assert!(!c.is_zero());
                    assert!(measure(&w) < before, "{x} {y} -> {w:?}");
                }
            }
        }
    }
}
