use num_traits::{One, Zero};
use proptest::prelude::*;

use qball::algebra::{Algebra, Generator, NormalMonomial, PolElement, Shape, Strategy as Redex};
use qball::fock::{Fock, HVector};
use qball::oracles::{brute_force_inner, classical_det_expansion, CommutativePoly};
use qball::scalars::{rational, QFun, Rational};

fn shape_upto(max: usize) -> impl Strategy<Value = Shape> {
    (1..=max, 1..=max).prop_filter_map("m <= n", |(m, n)| Shape::new(m, n).ok())
}

fn letter(s: Shape) -> impl Strategy<Value = Generator> {
    (1..=s.m, 1..=s.n, any::<bool>()).prop_map(|(alpha, a, starred)| Generator { alpha, a, starred })
}

fn holomorphic_letter(s: Shape) -> impl Strategy<Value = Generator> {
    (1..=s.m, 1..=s.n).prop_map(|(alpha, a)| Generator::z(alpha, a))
}

fn shaped_word(max_shape: usize, max_len: usize) -> impl Strategy<Value = (Shape, Vec<Generator>)> {
    shape_upto(max_shape).prop_flat_map(move |s| (Just(s), prop::collection::vec(letter(s), 0..=max_len)))
}

fn numeric(s: Shape) -> Algebra<Rational> {
    Algebra::numeric(s, rational(1, 3)).unwrap()
}

/// `Σ c_i · nf(w_i)` for small integer coefficients.
fn element(alg: &Algebra<Rational>, parts: &[(i64, Vec<Generator>)]) -> PolElement<Rational> {
    let mut out = PolElement::zero(alg.shape());
    for (c, w) in parts {
        out = out.add(&alg.normal_form(w).unwrap().scale(&rational(*c, 1)));
    }
    out
}

fn element_parts(s: Shape, max_len: usize) -> impl Strategy<Value = Vec<(i64, Vec<Generator>)>> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(letter(s), 0..=max_len)), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn strategies_agree((s, w) in shaped_word(3, 8)) {
        let alg = numeric(s);
        let fast = alg.normal_form(&w).unwrap();
        prop_assert_eq!(&alg.normal_form_with(&w, Redex::Leftmost).unwrap(), &fast);
        prop_assert_eq!(&alg.normal_form_with(&w, Redex::Rightmost).unwrap(), &fast);
    }

    #[test]
    fn normal_form_preserves_weight((s, w) in shaped_word(3, 6)) {
        let alg = numeric(s);
        let mut rows = vec![0i64; s.m];
        let mut cols = vec![0i64; s.n];
        for g in &w {
            let sgn = if g.starred { -1 } else { 1 };
            rows[g.alpha - 1] += sgn;
            cols[g.a - 1] += sgn;
        }
        for (m, _) in alg.normal_form(&w).unwrap().terms() {
            prop_assert_eq!(m.weight_vector(&s), (rows.clone(), cols.clone()));
        }
    }

    #[test]
    fn star_is_an_involutive_antihomomorphism(
        (s, f, g) in shape_upto(3).prop_flat_map(|s| (Just(s), element_parts(s, 4), element_parts(s, 4)))
    ) {
        let alg = numeric(s);
        let f = element(&alg, &f);
        let g = element(&alg, &g);
        prop_assert_eq!(&alg.star(&alg.star(&f)), &f);
        let lhs = alg.star(&alg.multiply(&f, &g).unwrap());
        let rhs = alg.multiply(&alg.star(&g), &alg.star(&f)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn action_is_adjoint(
        (s, f, p1, p2) in shape_upto(2).prop_flat_map(|s| (
            Just(s),
            element_parts(s, 4),
            prop::collection::vec((-3i64..=3, prop::collection::vec(holomorphic_letter(s), 0..=4)), 1..=3),
            prop::collection::vec((-3i64..=3, prop::collection::vec(holomorphic_letter(s), 0..=4)), 1..=3),
        ))
    ) {
        let fock = Fock::new(numeric(s));
        let alg = fock.algebra();
        let f = element(alg, &f);
        let v1 = HVector::from_poly(element(alg, &p1)).unwrap();
        let v2 = HVector::from_poly(element(alg, &p2)).unwrap();
        let lhs = fock.inner(&fock.act(&f, &v1).unwrap(), &v2).unwrap();
        let rhs = fock.inner(&v1, &fock.act(&alg.star(&f), &v2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fast_inner_product_matches_brute_force(
        (s, w1, w2) in shape_upto(2).prop_flat_map(|s| (
            Just(s),
            prop::collection::vec(letter(s), 0..=4),
            prop::collection::vec(letter(s), 0..=4),
        ))
    ) {
        let fock = Fock::new(Algebra::formal(s));
        let v1 = fock.act_word(&w1, &HVector::vacuum(s));
        let v2 = fock.act_word(&w2, &HVector::vacuum(s));
        prop_assert_eq!(fock.inner(&v1, &v2).unwrap(), brute_force_inner(&s, &w1, &w2).unwrap());
    }

    #[test]
    fn representation_property(
        (s, f, g, p) in shape_upto(2).prop_flat_map(|s| (
            Just(s),
            element_parts(s, 3),
            element_parts(s, 3),
            prop::collection::vec((-3i64..=3, prop::collection::vec(holomorphic_letter(s), 0..=3)), 1..=2),
        ))
    ) {
        let fock = Fock::new(numeric(s));
        let alg = fock.algebra();
        let f = element(alg, &f);
        let g = element(alg, &g);
        let v = HVector::from_poly(element(alg, &p)).unwrap();
        let fg = alg.multiply(&f, &g).unwrap();
        prop_assert_eq!(fock.act(&fg, &v).unwrap(), fock.act(&f, &fock.act(&g, &v).unwrap()).unwrap());
        prop_assert_eq!(fock.act(&fg, &v).unwrap(), fock.act_via_normal_form(&fg, &v).unwrap());
    }
}

fn to_commutative(s: &Shape, p: &PolElement<Rational>) -> CommutativePoly {
    let mut out = CommutativePoly::zero(2 * s.generator_count());
    for (m, c) in p.terms() {
        let mut e = m.e.clone();
        e.extend_from_slice(&m.f);
        out.add_term(e, c.clone());
    }
    out
}

#[test]
fn classical_limit_is_commutative() {
    for (m, n) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)] {
        let s = Shape::new(m, n).unwrap();
        let alg = Algebra::classical_specialization(s);
        let letters: Vec<Generator> =
            (1..=m).flat_map(|al| (1..=n).flat_map(move |a| [Generator::z(al, a), Generator::zs(al, a)])).collect();
        for &x in &letters {
            for &y in &letters {
                let xy = alg.normal_form(&[x, y]).unwrap();
                let yx = alg.normal_form(&[y, x]).unwrap();
                assert_commutes(&xy, &yx, x, y);
            }
        }
    }
}

fn assert_commutes(xy: &PolElement<Rational>, yx: &PolElement<Rational>, x: Generator, y: Generator) {
    assert_eq!(xy, yx, "[{x}, {y}] ≠ 0 at q = 1");
    assert_eq!(xy.len(), 1);
}

#[test]
fn classical_limit_of_y_is_the_determinant() {
    for (m, n) in [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)] {
        let s = Shape::new(m, n).unwrap();
        let y = Algebra::classical_specialization(s).y_element();
        assert_eq!(to_commutative(&s, &y), classical_det_expansion(&s).unwrap(), "shape {s}");
    }
}

#[test]
fn brute_force_against_fock_on_fixed_words() {
    let s = Shape::new(2, 2).unwrap();
    let fock = Fock::new(Algebra::formal(s));
    let words = [
        vec![Generator::z(1, 1), Generator::z(2, 2)],
        vec![Generator::z(2, 2), Generator::z(1, 1)],
        vec![Generator::z(1, 2), Generator::z(2, 1)],
        vec![Generator::z(1, 1), Generator::z(1, 2), Generator::z(2, 1)],
    ];
    for w1 in &words {
        for w2 in &words {
            let v1 = fock.act_word(w1, &HVector::vacuum(s));
            let v2 = fock.act_word(w2, &HVector::vacuum(s));
            assert_eq!(fock.inner(&v1, &v2).unwrap(), brute_force_inner(&s, w1, w2).unwrap());
        }
    }
    assert_eq!(brute_force_inner(&s, &[], &[]).unwrap(), QFun::one());
    let single = NormalMonomial::generator(&s, Generator::z(1, 2));
    let v = HVector::basis(s, &single).unwrap();
    assert!(!fock.inner(&v, &v).unwrap().is_zero());
}
