//! The `qball` command line: `expand`, `gram`, `norms` and `verify`.
//!
//! Exit codes are 0 on success, 1 for invalid input and 2 when a
//! computation fails or a verification check does not pass.

mod config;
mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

pub use config::{Flags, Param, ResolvedDoc, RunConfig};
pub use verify::{run_suite, Check, SUITES};

use crate::algebra::monomial::sparse_triples;
use crate::algebra::{Algebra, PolElement};
use crate::fock::{Fock, IntegralParams};
use crate::kernels::{Kernels, LambdaTag, SeriesDoc};
use crate::scalars::text::rational_to_text;
use crate::scalars::{Magnitude, QFun, Rational};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Computation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Computation(_) => 2,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        use crate::Error as E;
        match e {
            E::InvalidShape(_) | E::InvalidParameter(_) | E::Parse(_) | E::IndexOutOfRange(_) => {
                CliError::Validation(e.to_string())
            }
            _ => CliError::Computation(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "qball", version, about = "Exact computations on the quantum matrix ball")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expand the weighted (or ordinary) Bergman kernel up to a degree.
    Expand(Flags),
    /// Gram matrices of the weighted inner product, one per degree.
    Gram(Flags),
    /// Squared norms of the holomorphic monomials, one per degree.
    Norms(Flags),
    /// Run a verification suite.
    Verify(Flags),
}

#[derive(Serialize)]
struct ExpandDoc {
    config: ResolvedDoc,
    series: SeriesDoc,
}

#[derive(Serialize)]
struct ShapeDoc {
    m: usize,
    n: usize,
}

#[derive(Serialize)]
struct GramBlockDoc {
    shape: ShapeDoc,
    lambda: String,
    q: String,
    degree: usize,
    basis: Vec<Vec<[usize; 3]>>,
    /// Truncated sums, exact.
    matrix: Vec<Vec<String>>,
    approx: Vec<Vec<f64>>,
    delta: f64,
    truncation: usize,
}

#[derive(Serialize)]
struct GramDoc {
    config: ResolvedDoc,
    blocks: Vec<GramBlockDoc>,
}

#[derive(Serialize)]
struct NormDoc {
    degree: usize,
    monomial: Vec<[usize; 3]>,
    norm_squared: String,
    approx: f64,
    delta: f64,
}

#[derive(Serialize)]
struct NormsDoc {
    config: ResolvedDoc,
    norms: Vec<NormDoc>,
}

#[derive(Serialize)]
struct VerifyDoc {
    config: ResolvedDoc,
    passed: bool,
    checks: Vec<Check>,
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn cmd_expand(cfg: &RunConfig) -> Result<String, CliError> {
    if cfg.q != Param::Formal {
        return Err(CliError::Validation("expand works with formal q; drop --q or pass --q formal".into()));
    }
    let ks = Kernels::new(cfg.shape);
    let series = if cfg.ordinary {
        let special = Rational::from_integer(((cfg.shape.m + cfg.shape.n) as i64).into());
        if matches!(&cfg.lambda, Param::Value(v) if *v != special) {
            return Err(CliError::Validation(format!("--ordinary fixes lambda = m+n = {special}")));
        }
        ks.ordinary_bergman_kernel(cfg.degree)
    } else {
        let formal = ks.bergman_kernel(cfg.degree);
        match &cfg.lambda {
            Param::Formal => formal,
            Param::Value(v) => {
                let two = v * Rational::from_integer(2.into());
                if !two.is_integer() {
                    return Err(CliError::Validation(format!(
                        "expand needs 2*lambda to be an integer so that q^(2 lambda) is rational in q, got {}",
                        rational_to_text(v)
                    )));
                }
                let k =
                    two.to_integer().to_i64().ok_or_else(|| CliError::Validation("lambda is out of range".into()))?;
                formal.substitute_u(&QFun::q_pow(k), LambdaTag::Value(rational_to_text(v)))
            }
        }
    };
    Ok(to_json(&ExpandDoc { config: cfg.doc("expand"), series: SeriesDoc::from_series(&series) }))
}

fn numeric_fock(cfg: &RunConfig, command: &str) -> Result<(Fock<Rational>, IntegralParams, Rational), CliError> {
    let q = cfg.numeric_q(command)?;
    let lambda = cfg.integral_lambda(command)?;
    let fock = Fock::new(Algebra::numeric(cfg.shape, q.clone())?);
    Ok((fock, IntegralParams::new(lambda, cfg.tolerance.clone()), q))
}

pub fn cmd_gram(cfg: &RunConfig) -> Result<String, CliError> {
    let (fock, params, _) = numeric_fock(cfg, "gram")?;
    let mut blocks = Vec::new();
    for d in 0..=cfg.degree {
        let g = fock.gram_matrix(d, &params)?;
        let rows = g.matrix.to_rows();
        blocks.push(GramBlockDoc {
            shape: ShapeDoc { m: cfg.shape.m, n: cfg.shape.n },
            lambda: cfg.lambda.to_string(),
            q: cfg.q.to_string(),
            degree: d,
            basis: g.basis.iter().map(|b| sparse_triples(&cfg.shape, &b.e)).collect(),
            matrix: rows.iter().map(|r| r.iter().map(rational_to_text).collect()).collect(),
            approx: rows.iter().map(|r| r.iter().map(Magnitude::to_f64).collect()).collect(),
            delta: g.delta,
            truncation: g.truncation,
        });
    }
    Ok(to_json(&GramDoc { config: cfg.doc("gram"), blocks }))
}

pub fn cmd_norms(cfg: &RunConfig) -> Result<String, CliError> {
    let (fock, params, _) = numeric_fock(cfg, "norms")?;
    let alg = fock.algebra();
    let mut norms = Vec::new();
    for d in 0..=cfg.degree {
        for b in crate::fock::gram_basis(&cfg.shape, d) {
            let p = PolElement::monomial(cfg.shape, b.clone(), num_traits::One::one());
            let f = alg.multiply(&alg.star(&p), &p)?;
            let t = fock.weighted_integral(&f, &params)?;
            norms.push(NormDoc {
                degree: d,
                monomial: sparse_triples(&cfg.shape, &b.e),
                approx: Magnitude::to_f64(&t.value),
                norm_squared: rational_to_text(&t.value),
                delta: t.delta,
            });
        }
    }
    Ok(to_json(&NormsDoc { config: cfg.doc("norms"), norms }))
}

/// Runs the selected suite; the error case carries the report of a failing run.
pub fn cmd_verify(cfg: &RunConfig) -> Result<(String, bool), CliError> {
    let suite = cfg.suite.clone().unwrap_or_else(|| "all".to_string());
    if suite != "all" && !SUITES.contains(&suite.as_str()) {
        return Err(CliError::Validation(format!("unknown suite {suite:?}; expected one of {SUITES:?} or \"all\"")));
    }
    let selected: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
    let mut checks = Vec::new();
    for s in selected {
        checks.extend(run_suite(s, cfg)?);
    }
    for c in &checks {
        eprintln!("{} {}/{}: {}", if c.passed { "PASS" } else { "FAIL" }, c.suite, c.name, c.detail);
    }
    let passed = checks.iter().all(|c| c.passed);
    let mut resolved = cfg.clone();
    resolved.suite = Some(suite);
    Ok((to_json(&VerifyDoc { config: resolved.doc("verify"), passed, checks }), passed))
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Computation(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Computation(e.to_string()))
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    let (flags, name) = match &cli.command {
        Command::Expand(f) => (f, "expand"),
        Command::Gram(f) => (f, "gram"),
        Command::Norms(f) => (f, "norms"),
        Command::Verify(f) => (f, "verify"),
    };
    let cfg = RunConfig::resolve(flags)?;
    let (text, code) = match name {
        "expand" => (cmd_expand(&cfg)?, 0),
        "gram" => (cmd_gram(&cfg)?, 0),
        "norms" => (cmd_norms(&cfg)?, 0),
        _ => {
            let (text, passed) = cmd_verify(&cfg)?;
            (text, if passed { 0 } else { 2 })
        }
    };
    emit(&cfg, &text)?;
    Ok(code)
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
