//! Run configuration: defaults, then the config file, then flags.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::Args;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::algebra::Shape;
use crate::scalars::text::{parse_rational, rational_to_text};
use crate::scalars::{check_q, Rational};

pub const DEFAULT_TOLERANCE: &str = "1/1000000000000";

/// Flags shared by every command. All optional so that the config file can fill gaps.
#[derive(Args, Debug, Clone, Default)]
pub struct Flags {
    /// Number of rows.
    #[arg(long)]
    pub m: Option<usize>,
    /// Number of columns.
    #[arg(long)]
    pub n: Option<usize>,
    /// Highest degree computed.
    #[arg(long)]
    pub degree: Option<usize>,
    /// "formal" or a rational such as 3 or 7/2.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// "formal" or a rational in (0, 1).
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Expand the ordinary kernel (lambda = m + n) as a finite product.
    #[arg(long)]
    pub ordinary: bool,
    /// Stabilization tolerance for truncated traces, as a rational.
    #[arg(long)]
    pub tolerance: Option<String>,
    /// Write the JSON document here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Verification suite: algebra, fock, kernels, crosscheck or all.
    #[arg(long)]
    pub suite: Option<String>,
    /// TOML file with any of the keys above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    m: Option<usize>,
    n: Option<usize>,
    degree: Option<usize>,
    lambda: Option<toml::Value>,
    q: Option<toml::Value>,
    ordinary: Option<bool>,
    tolerance: Option<toml::Value>,
    out: Option<PathBuf>,
    suite: Option<String>,
}

/// A parameter that is either formal or a fixed rational.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Formal,
    Value(Rational),
}

impl Param {
    fn parse(name: &str, s: &str) -> Result<Self, CliError> {
        if s.trim() == "formal" {
            return Ok(Param::Formal);
        }
        parse_rational(s)
            .map(Param::Value)
            .map_err(|_| CliError::Validation(format!("--{name} must be \"formal\" or a rational like 7/2, got {s:?}")))
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            Param::Formal => None,
            Param::Value(v) => Some(v),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Formal => write!(f, "formal"),
            Param::Value(v) => write!(f, "{}", rational_to_text(v)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub shape: Shape,
    pub degree: usize,
    pub lambda: Param,
    pub q: Param,
    pub ordinary: bool,
    pub tolerance: Rational,
    pub out: Option<PathBuf>,
    pub suite: Option<String>,
}

/// The resolved configuration as it appears in output documents.
#[derive(Serialize, Debug)]
pub struct ResolvedDoc {
    pub command: String,
    pub m: usize,
    pub n: usize,
    pub degree: usize,
    pub lambda: String,
    pub q: String,
    pub ordinary: bool,
    pub tolerance: String,
    pub suite: Option<String>,
    pub out: Option<String>,
}

fn value_text(name: &str, v: &toml::Value) -> Result<String, CliError> {
    match v {
        toml::Value::String(s) => Ok(s.clone()),
        toml::Value::Integer(i) => Ok(i.to_string()),
        other => Err(CliError::Validation(format!("config key {name} must be a string or integer, got {other}"))),
    }
}

fn read_file(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Validation(format!("bad config {}: {e}", path.display())))
}

impl RunConfig {
    pub fn resolve(flags: &Flags) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(p) => read_file(p)?,
            None => FileConfig::default(),
        };
        let m = flags.m.or(file.m).unwrap_or(1);
        let n = flags.n.or(file.n).unwrap_or(1);
        let shape = Shape::new(m, n).map_err(|e| CliError::Validation(e.to_string()))?;
        let degree = flags.degree.or(file.degree).unwrap_or(3);

        let text = |flag: &Option<String>,
                    key: &str,
                    from_file: &Option<toml::Value>,
                    default: &str|
         -> Result<String, CliError> {
            match (flag, from_file) {
                (Some(s), _) => Ok(s.clone()),
                (None, Some(v)) => value_text(key, v),
                (None, None) => Ok(default.to_string()),
            }
        };
        let lambda = Param::parse("lambda", &text(&flags.lambda, "lambda", &file.lambda, "formal")?)?;
        let q = Param::parse("q", &text(&flags.q, "q", &file.q, "formal")?)?;
        if let Param::Value(v) = &q {
            check_q(v).map_err(|e| CliError::Validation(e.to_string()))?;
        }
        if let Param::Value(v) = &lambda {
            if v.is_negative() {
                return Err(CliError::Validation(format!("lambda must be nonnegative, got {}", rational_to_text(v))));
            }
        }
        let tol_text = text(&flags.tolerance, "tolerance", &file.tolerance, DEFAULT_TOLERANCE)?;
        let tolerance = parse_rational(&tol_text)
            .map_err(|_| CliError::Validation(format!("--tolerance must be a rational, got {tol_text:?}")))?;
        if tolerance <= Rational::zero() || tolerance >= Rational::one() {
            return Err(CliError::Validation("--tolerance must lie in (0, 1)".into()));
        }
        Ok(RunConfig {
            shape,
            degree,
            lambda,
            q,
            ordinary: flags.ordinary || file.ordinary.unwrap_or(false),
            tolerance,
            out: flags.out.clone().or(file.out),
            suite: flags.suite.clone().or(file.suite),
        })
    }

    pub fn doc(&self, command: &str) -> ResolvedDoc {
        ResolvedDoc {
            command: command.to_string(),
            m: self.shape.m,
            n: self.shape.n,
            degree: self.degree,
            lambda: self.lambda.to_string(),
            q: self.q.to_string(),
            ordinary: self.ordinary,
            tolerance: rational_to_text(&self.tolerance),
            suite: self.suite.clone(),
            out: self.out.as_ref().map(|p| p.display().to_string()),
        }
    }

    /// Numeric `q`, required by commands that sum traces.
    pub fn numeric_q(&self, command: &str) -> Result<Rational, CliError> {
        self.q
            .value()
            .cloned()
            .ok_or_else(|| CliError::Validation(format!("{command} needs a numeric --q such as 1/2")))
    }

    /// Integer `λ > m+n−1`, required by weighted integrals.
    pub fn integral_lambda(&self, command: &str) -> Result<u32, CliError> {
        let v =
            self.lambda.value().ok_or_else(|| CliError::Validation(format!("{command} needs a numeric --lambda")))?;
        if !v.is_integer() {
            return Err(CliError::Validation(format!(
                "{command} needs an integer lambda, got {}",
                rational_to_text(v)
            )));
        }
        let bound = self.shape.m + self.shape.n - 1;
        let l = v.to_integer().to_u32().ok_or_else(|| CliError::Validation("lambda is out of range".into()))?;
        if l as usize <= bound {
            return Err(CliError::Validation(format!("lambda must exceed m+n-1 = {bound}, got {l}")));
        }
        Ok(l)
    }
}
