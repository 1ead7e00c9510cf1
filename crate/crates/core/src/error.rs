use thiserror::Error;

/// Errors raised by the algebra, representation and kernel layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes at the evaluation point {0}")]
    VanishingDenominator(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("shape mismatch between operands")]
    ShapeMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("truncated trace did not stabilize by degree {degree} (last delta {delta:e})")]
    NotStabilized { degree: usize, delta: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
