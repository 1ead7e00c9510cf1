use num_traits::{One, Zero};

use super::*;
use crate::scalars::rational;

fn shape(m: usize, n: usize) -> Shape {
    Shape::new(m, n).unwrap()
}

fn km(s: &Shape, left: &[u32], right: &[u32]) -> KernelMonomial {
    let _ = s;
    KernelMonomial::new(NormalMonomial::holomorphic(left.to_vec()), NormalMonomial::antiholomorphic(right.to_vec()))
        .unwrap()
}

fn qpoch(k: usize) -> QFun {
    (1..=k).fold(QFun::one(), |acc, j| acc * QFun::one_minus(1, 2 * j))
}

/// `(1−u)(1−uq²)⋯(1−uq^{2(i−1)}) / ((1−q²)⋯(1−q^{2i}))`, entered directly.
fn disc_series_coefficient(i: usize) -> QUFun {
    let mut num = QUFun::one();
    for r in 0..i {
        num = &num * &QUFun::from_coeffs(vec![QFun::one(), -QFun::q_pow(2 * r as i64)]);
    }
    num.div_qfun(&qpoch(i)).unwrap()
}

#[test]
fn unit_and_single_generator_products() {
    let s = shape(1, 1);
    let ks = Kernels::new(s);
    let k1 = ks.poly_kernel(1).unwrap();
    assert_eq!(k1, KernelElement::from_terms(s, [(km(&s, &[1], &[1]), QUFun::one())]));
    assert_eq!(ks.kernel_mul(&KernelElement::one(s), &k1).unwrap(), k1);
    let sq = ks.kernel_mul(&k1, &k1).unwrap();
    assert_eq!(sq, KernelElement::from_terms(s, [(km(&s, &[2], &[2]), QUFun::one())]));
}

#[test]
fn first_kernel_of_the_square() {
    let s = shape(2, 2);
    let ks = Kernels::new(s);
    let k1 = ks.poly_kernel(1).unwrap();
    assert_eq!(k1.len(), 4);
    for i in 0..4 {
        let mut e = vec![0; 4];
        e[i] = 1;
        assert_eq!(k1.coeff(&km(&s, &e, &e)), QUFun::one());
    }
    assert!(ks.poly_kernel(3).is_err());
    assert!(ks.poly_kernel(0).is_err());
}

#[test]
fn second_kernel_is_the_determinant_square() {
    let s = shape(2, 2);
    let ks = Kernels::new(s);
    let alg = ks.algebra();
    let det = alg.q_minor(&[1, 2], &[1, 2]).unwrap();
    let expected: KernelElement<QUFun> = KernelElement::tensor(&det, &alg.star(&det)).unwrap();
    assert_eq!(ks.poly_kernel(2).unwrap(), expected);
    assert_eq!(expected.bidegrees(), vec![(2, 2)]);
}

#[test]
fn kernels_commute_on_the_square() {
    let ks = Kernels::new(shape(2, 2));
    let k1 = ks.poly_kernel(1).unwrap();
    let k2 = ks.poly_kernel(2).unwrap();
    assert_eq!(ks.kernel_mul(&k1, &k2).unwrap(), ks.kernel_mul(&k2, &k1).unwrap());
}

#[test]
fn kernels_are_conjugation_invariant() {
    for (m, n) in [(1, 2), (2, 2)] {
        let ks = Kernels::new(shape(m, n));
        for i in 1..=m {
            let k = ks.poly_kernel(i).unwrap();
            assert_eq!(ks.conjugate(&k), k);
        }
    }
}

#[test]
fn first_product_coefficients() {
    let s = shape(1, 2);
    let ks = Kernels::new(s);
    let k1 = ks.poly_kernel(1).unwrap();
    let den = QFun::one_minus(1, 2);
    let plain = ks.product_series(1, ProductScale::Plain);
    assert_eq!(plain.terms[0], KernelElement::one(s));
    assert_eq!(plain.terms[1], k1.scale(&QUFun::constant(-den.recip().unwrap())));
    let num = ks.product_series(1, ProductScale::Numerator);
    assert_eq!(num.terms[1], k1.scale(&QUFun::u().scale(&-den.recip().unwrap())));
}

#[test]
fn inverse_series_on_the_disc() {
    let s = shape(1, 1);
    let ks = Kernels::new(s);
    let h = ks.inverse_series(4);
    for d in 0..=4 {
        let d32 = d as u32;
        let expected =
            KernelElement::from_terms(s, [(km(&s, &[d32], &[d32]), QUFun::constant(qpoch(d).recip().unwrap()))]);
        assert_eq!(h.terms[d], expected);
    }
}

#[test]
fn telescoping_on_the_square() {
    let s = shape(2, 2);
    let ks = Kernels::new(s);
    let prod = ks.series_mul(&ks.product_series(3, ProductScale::Plain), &ks.inverse_series(3)).unwrap();
    assert_eq!(prod[0], KernelElement::one(s));
    assert!(prod[1..].iter().all(KernelElement::is_zero));
}

#[test]
fn disc_bergman_series() {
    let s = shape(1, 1);
    let ks = Kernels::new(s);
    let k = ks.bergman_kernel(8);
    for i in 0..=8u32 {
        let expected = KernelElement::from_terms(s, [(km(&s, &[i], &[i]), disc_series_coefficient(i as usize))]);
        assert_eq!(k.terms[i as usize], expected, "degree {i}");
    }
}

#[test]
fn first_term_of_the_bergman_kernel() {
    let s = shape(1, 2);
    let ks = Kernels::new(s);
    let k = ks.bergman_kernel(1);
    let c = QUFun::from_coeffs(vec![QFun::one(), -QFun::one()]).div_qfun(&QFun::one_minus(1, 2)).unwrap();
    assert_eq!(k.terms[1], ks.poly_kernel(1).unwrap().scale(&c));
}

#[test]
fn collapse_at_u_one_and_ordinary_specialization() {
    for (m, n) in [(1, 1), (1, 2), (2, 2)] {
        let ks = Kernels::new(shape(m, n));
        let k = ks.bergman_kernel(3);
        let at_one = k.substitute_u(&QFun::one(), LambdaTag::Value("0".into()));
        assert_eq!(at_one.terms[0], KernelElement::one(shape(m, n)));
        assert!(at_one.terms[1..].iter().all(KernelElement::is_zero));
        let tag = LambdaTag::Value((m + n).to_string());
        let special = k.substitute_u(&QFun::q_pow(2 * (m + n) as i64), tag);
        assert_eq!(special, ks.ordinary_bergman_kernel(3), "shape {m}x{n}");
    }
}

#[test]
fn ordinary_disc_coefficients() {
    let s = shape(1, 1);
    let ks = Kernels::new(s);
    let k = ks.ordinary_bergman_kernel(5);
    for i in 0..=5u32 {
        let c = QFun::one_minus(1, 2 * (i as usize + 1)).checked_div(&QFun::one_minus(1, 2)).unwrap();
        assert_eq!(k.terms[i as usize].coeff(&km(&s, &[i], &[i])), QUFun::constant(c));
    }
    assert_eq!(k.terms[1].coeff(&km(&s, &[1], &[1])).to_text(), "1+q^2");
}

#[test]
fn ordinary_disc_near_q_one() {
    // 1 + q^2 + ... + q^{2i} falls short of i+1 by at most i(i+1)(1-q)
    let s = shape(1, 1);
    let k = Kernels::new(s).ordinary_bergman_kernel(5);
    let q = rational(99, 100);
    for i in 0..=5u32 {
        let v = k.terms[i as usize].coeff(&km(&s, &[i], &[i])).eval(&q, &Rational::zero()).unwrap();
        let target = rational(i as i64 + 1, 1);
        assert!(v <= target);
        assert!(&target - &v <= rational((i * (i + 1)) as i64, 100));
    }
}

#[test]
fn coefficient_matrices() {
    let s = shape(1, 1);
    let ks = Kernels::new(s);
    let k = ks.bergman_kernel(2);
    assert_eq!(ks.coefficient_matrix(&k, 0).unwrap(), Matrix::identity(1));
    assert_eq!(ks.coefficient_matrix(&k, 1).unwrap()[(0, 0)].to_text(), "(1-l)/(1-q^2)");
    assert!(ks.coefficient_matrix(&k, 3).is_err());

    let ks = Kernels::new(shape(1, 2));
    let k = ks.bergman_kernel(2);
    let c1 = ks.coefficient_matrix(&k, 1).unwrap();
    assert!(c1[(0, 1)].is_zero() && c1[(1, 0)].is_zero() && !c1[(0, 0)].is_zero());
    let c2 = ks.coefficient_matrix(&k, 2).unwrap();
    assert!(c2.is_symmetric());
}

#[test]
fn coefficient_matrix_is_symmetric_on_the_square() {
    let ks = Kernels::new(shape(2, 2));
    let k = ks.bergman_kernel(2);
    for d in 0..=2 {
        assert!(ks.coefficient_matrix(&k, d).unwrap().is_symmetric(), "degree {d}");
        assert_eq!(ks.conjugate(&k.terms[d]), k.terms[d]);
    }
}

#[test]
fn json_round_trip() {
    let ks = Kernels::new(shape(2, 2));
    let k = ks.bergman_kernel(2);
    let text = series_to_json(&k);
    let back = parse_series(&text).unwrap();
    assert_eq!(back, k);
    assert_eq!(series_to_json(&back), text);
    assert!(parse_series("{\"shape\":{\"m\":2,\"n\":1},\"D\":0,\"lambda\":\"formal\",\"terms\":[]}").is_err());
}

#[test]
fn matrix_evaluation() {
    let ks = Kernels::new(shape(1, 1));
    let k = ks.bergman_kernel(1);
    let c = ks.coefficient_matrix(&k, 1).unwrap();
    let v = evaluate_matrix(&c, &rational(1, 2), &rational(1, 64)).unwrap();
    // (1 − 1/64)/(1 − 1/4)
    assert_eq!(v[(0, 0)], rational(21, 16));
    assert!(!v[(0, 0)].is_zero());
}
