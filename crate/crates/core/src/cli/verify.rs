//! Verification suites behind `qball verify`. Random instances come from a
//! fixed seed, so a suite gives the same report on every run.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{CliError, Param, RunConfig};
use crate::algebra::minors::permutations;
use crate::algebra::{Algebra, Generator, NormalMonomial, PolElement, Shape, Strategy};
use crate::fock::{Fock, HVector, IntegralParams};
use crate::kernels::{evaluate_matrix, KernelElement, KernelMonomial, Kernels, LambdaTag, ProductScale};
use crate::linalg::Matrix;
use crate::oracles;
use crate::scalars::{rational, Coeff, Magnitude, QFun, Rational};

pub const SUITES: [&str; 4] = ["algebra", "fock", "kernels", "crosscheck"];

const SEED: u64 = 0x005e_ed0f_ba11;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(suite: &str, name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check { suite: suite.into(), name: name.into(), passed, detail: detail.into() }
}

pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    match name {
        "algebra" => algebra_suite(cfg),
        "fock" => fock_suite(cfg),
        "kernels" => kernels_suite(cfg),
        "crosscheck" => crosscheck_suite(cfg),
        other => Err(CliError::Validation(format!("unknown suite {other:?}"))),
    }
}

fn random_letter(rng: &mut ChaCha8Rng, s: &Shape, starred: Option<bool>) -> Generator {
    Generator {
        alpha: rng.gen_range(1..=s.m),
        a: rng.gen_range(1..=s.n),
        starred: starred.unwrap_or_else(|| rng.gen_bool(0.5)),
    }
}

fn random_word(rng: &mut ChaCha8Rng, s: &Shape, max_len: usize, starred: Option<bool>) -> Vec<Generator> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| random_letter(rng, s, starred)).collect()
}

/// A combination of up to three normalized words with small integer coefficients.
fn random_element(
    rng: &mut ChaCha8Rng,
    alg: &Algebra<Rational>,
    max_len: usize,
    starred: Option<bool>,
) -> Result<PolElement<Rational>, CliError> {
    let s = alg.shape();
    let mut out = PolElement::zero(s);
    for _ in 0..rng.gen_range(1..=3) {
        let c = rational(rng.gen_range(-3..=3), 1);
        out = out.add(&alg.normal_form(&random_word(rng, &s, max_len, starred))?.scale(&c));
    }
    Ok(out)
}

fn q_or(cfg: &RunConfig, default: Rational) -> Rational {
    cfg.q.value().cloned().unwrap_or(default)
}

fn lambda_or_default(cfg: &RunConfig, command: &str) -> Result<u32, CliError> {
    match cfg.lambda {
        Param::Formal => Ok((cfg.shape.m + cfg.shape.n) as u32),
        Param::Value(_) => cfg.integral_lambda(command),
    }
}

fn algebra_suite(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    let s = cfg.shape;
    let alg = Algebra::numeric(s, q_or(cfg, rational(1, 3)))?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();

    let words = 100;
    let mut bad = 0;
    for _ in 0..words {
        let w = random_word(&mut rng, &s, 8, None);
        let fast = alg.normal_form(&w)?;
        if alg.normal_form_with(&w, Strategy::Leftmost)? != fast
            || alg.normal_form_with(&w, Strategy::Rightmost)? != fast
        {
            bad += 1;
        }
    }
    out.push(check(
        "algebra",
        "confluence",
        bad == 0,
        format!("{bad} of {words} random words disagree across strategies"),
    ));

    let pairs = 50;
    let mut bad = 0;
    for _ in 0..pairs {
        let f = random_element(&mut rng, &alg, 4, None)?;
        let g = random_element(&mut rng, &alg, 4, None)?;
        let involutive = alg.star(&alg.star(&f)) == f;
        let anti = alg.star(&alg.multiply(&f, &g)?) == alg.multiply(&alg.star(&g), &alg.star(&f))?;
        if !(involutive && anti) {
            bad += 1;
        }
    }
    out.push(check(
        "algebra",
        "star",
        bad == 0,
        format!("{bad} of {pairs} random pairs violate star(star f) = f or star(fg) = star(g)star(f)"),
    ));

    let mut bad = 0;
    for _ in 0..words {
        let w = random_word(&mut rng, &s, 6, None);
        let mut rows = vec![0i64; s.m];
        let mut cols = vec![0i64; s.n];
        for g in &w {
            let sgn = if g.starred { -1 } else { 1 };
            rows[g.alpha - 1] += sgn;
            cols[g.a - 1] += sgn;
        }
        let target = (rows, cols);
        if alg.normal_form(&w)?.terms().any(|(m, _)| m.weight_vector(&s) != target) {
            bad += 1;
        }
    }
    out.push(check("algebra", "grading", bad == 0, format!("{bad} of {words} normal forms change the weight")));

    let formal = Algebra::formal(s);
    let rows: Vec<usize> = (1..=s.m).collect();
    let mut expected: Vec<QFun> = permutations(s.m).into_iter().map(|(_, l)| (-QFun::q()).pow(l as u32)).collect();
    expected.sort_by_key(|c| c.to_text());
    let mut ok = true;
    for cols in crate::algebra::minors::subsets(s.n, s.m) {
        let minor = formal.q_minor(&rows, &cols)?;
        let mut coeffs: Vec<QFun> = minor.terms().map(|(_, c)| c.clone()).collect();
        coeffs.sort_by_key(|c| c.to_text());
        ok &= coeffs == expected;
    }
    out.push(check(
        "algebra",
        "q-minors",
        ok,
        format!("full-row minors have {} terms with coefficients (-q)^l(s)", expected.len()),
    ));

    if s.m <= 3 && s.n <= 3 {
        let y = Algebra::classical_specialization(s).y_element();
        let det = oracles::classical_det_expansion(&s)?;
        let mut as_poly = oracles::CommutativePoly::zero(2 * s.generator_count());
        for (m, c) in y.terms() {
            let mut e = m.e.clone();
            e.extend_from_slice(&m.f);
            as_poly.add_term(e, c.clone());
        }
        out.push(check("algebra", "classical-limit", as_poly == det, "y at q = 1 against the determinant expansion"));
    }
    Ok(out)
}

fn fock_suite(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    let s = cfg.shape;
    let q = q_or(cfg, rational(1, 2));
    let lambda = lambda_or_default(cfg, "the fock suite")?;
    let fock = Fock::new(Algebra::numeric(s, q.clone())?);
    let alg = fock.algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let mut out = Vec::new();

    let cases = 30;
    let (mut adj_bad, mut rep_bad) = (0, 0);
    for _ in 0..cases {
        let f = random_element(&mut rng, alg, 4, None)?;
        let v1 = HVector::from_poly(random_element(&mut rng, alg, 3, Some(false))?)?;
        let v2 = HVector::from_poly(random_element(&mut rng, alg, 3, Some(false))?)?;
        let lhs = fock.inner(&fock.act(&f, &v1)?, &v2)?;
        let rhs = fock.inner(&v1, &fock.act(&alg.star(&f), &v2)?)?;
        adj_bad += usize::from(lhs != rhs);
        rep_bad += usize::from(fock.act(&f, &v1)? != fock.act_via_normal_form(&f, &v1)?);
    }
    out.push(check("fock", "adjointness", adj_bad == 0, format!("{adj_bad} of {cases} random instances fail")));
    out.push(check(
        "fock",
        "action-routes",
        rep_bad == 0,
        format!("{rep_bad} of {cases} fast actions differ from the normal-form route"),
    ));

    if s.m <= 2 && s.n <= 2 {
        let formal = Fock::new(Algebra::formal(s));
        let mut bad = 0;
        for _ in 0..cases {
            let w1 = random_word(&mut rng, &s, 4, None);
            let w2 = random_word(&mut rng, &s, 4, None);
            let v1 = formal.act_word(&w1, &HVector::vacuum(s));
            let v2 = formal.act_word(&w2, &HVector::vacuum(s));
            bad += usize::from(formal.inner(&v1, &v2)? != oracles::brute_force_inner(&s, &w1, &w2)?);
        }
        out.push(check(
            "fock",
            "brute-force-inner",
            bad == 0,
            format!("{bad} of {cases} word pairs differ from exhaustive rewriting"),
        ));
    }

    let params = IntegralParams::new(lambda, cfg.tolerance.clone());
    let mut failing = Vec::new();
    for d in 0..=cfg.degree {
        if !fock.gram_matrix(d, &params)?.matrix.is_positive_definite() {
            failing.push(d);
        }
    }
    out.push(check(
        "fock",
        "gram-positivity",
        failing.is_empty(),
        format!("degrees 0..={} (failing: {failing:?})", cfg.degree),
    ));

    let one = fock.weighted_integral(&alg.one(), &params)?;
    let err = (one.value.to_f64() - 1.0).abs();
    out.push(check(
        "fock",
        "normalization",
        err <= 1e-10,
        format!("|integral of 1 - 1| = {err:.3e} at lambda = {lambda}, truncated at degree {}", one.degree),
    ));
    Ok(out)
}

fn kernels_suite(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    let s = cfg.shape;
    let ks = Kernels::new(s);
    let mut out = Vec::new();
    let k: Vec<KernelElement<_>> = (1..=s.m).map(|i| ks.poly_kernel(i)).collect::<Result<_, _>>()?;

    let mut ok = true;
    for i in 0..s.m {
        for j in i + 1..s.m {
            ok &= ks.kernel_mul(&k[i], &k[j])? == ks.kernel_mul(&k[j], &k[i])?;
        }
    }
    out.push(check("kernels", "commutativity", ok, format!("k_i k_j = k_j k_i for i, j <= {}", s.m)));
    let ok = k.iter().all(|x| ks.conjugate(x) == *x);
    out.push(check("kernels", "conjugation", ok, "each k_i is fixed by the conjugation"));

    let d = cfg.degree;
    let prod = ks.series_mul(&ks.product_series(d, ProductScale::Plain), &ks.inverse_series(d))?;
    let ok = prod[0] == KernelElement::one(s) && prod[1..].iter().all(KernelElement::is_zero);
    out.push(check("kernels", "telescoping", ok, format!("product times inverse is 1 through degree {d}")));

    let bergman = ks.bergman_kernel(d);
    let collapsed = bergman.substitute_u(&QFun::one(), LambdaTag::Value("0".into()));
    let ok = collapsed.terms[0] == KernelElement::one(s) && collapsed.terms[1..].iter().all(KernelElement::is_zero);
    out.push(check("kernels", "u-one-collapse", ok, "positive-degree terms vanish at u = 1"));

    let big_n = s.m + s.n;
    let special = bergman.substitute_u(&QFun::q_pow(2 * big_n as i64), LambdaTag::Value(big_n.to_string()));
    let ok = special == ks.ordinary_bergman_kernel(d);
    out.push(check(
        "kernels",
        "ordinary-specialization",
        ok,
        format!("u = q^{} agrees with the finite product", 2 * big_n),
    ));

    if s.m == 1 && s.n == 1 {
        let ok = (0..=d).all(|i| {
            let m = KernelMonomial::new(
                NormalMonomial::holomorphic(vec![i as u32]),
                NormalMonomial::antiholomorphic(vec![i as u32]),
            );
            m.map(|m| bergman.terms[i].coeff(&m) == oracles::q_binomial_coefficient_series(i)).unwrap_or(false)
        });
        out.push(check("kernels", "disc-series", ok, "coefficients equal the q-binomial series"));
    }
    Ok(out)
}

fn crosscheck_suite(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    let s = cfg.shape;
    let q = q_or(cfg, rational(1, 2));
    let lambda = lambda_or_default(cfg, "the crosscheck suite")?;
    let fock = Fock::new(Algebra::numeric(s, q.clone())?);
    let ks = Kernels::new(s);
    let bergman = ks.bergman_kernel(cfg.degree);
    let params = IntegralParams::new(lambda, cfg.tolerance.clone());
    let u = num_traits::pow(q.clone(), 2 * lambda as usize);
    let mut out = Vec::new();
    for d in 0..=cfg.degree {
        let c = evaluate_matrix(&ks.coefficient_matrix(&bergman, d)?, &q, &u)?;
        let g = fock.gram_matrix(d, &params)?;
        let diff = c.mul(&g.matrix)?.sub(&Matrix::identity(c.rows()))?;
        let err = diff.to_rows().iter().flatten().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
        out.push(check(
            "crosscheck",
            &format!("reproducing-degree-{d}"),
            err <= 1e-9,
            format!("max |C G - I| = {err:.3e} ({} basis monomials, lambda = {lambda})", c.rows()),
        ));
    }
    Ok(out)
}
