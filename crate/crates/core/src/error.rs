//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse rational from {0:?}")]
    BadRational(String),

    #[error("series division needs a unit: divisor constant term is {0}")]
    DivisorNotUnit(String),

    #[error("series exp needs constant term 0, got {0}")]
    ExpConstantTerm(String),

    #[error("series log needs constant term 1, got {0}")]
    LogConstantTerm(String),

    #[error("series composition needs inner constant term 0, got {0}")]
    ComposeConstantTerm(String),

    #[error("series not divisible by x^{power}: coefficient of x^{index} is {coeff}")]
    NotDivisibleByX { power: usize, index: usize, coeff: String },

    #[error("truncation order {got} is insufficient, need at least {need}")]
    InsufficientTruncation { need: usize, got: usize },

    #[error("matrix entries must be of positive even degree for det(1+Φ), found degree {0}")]
    NonEvenEntry(usize),

    #[error("presentation is invalid: {0}")]
    BadPresentation(String),

    #[error("unknown model {0:?}")]
    UnknownModel(String),

    #[error("cochain is not a cocycle mod Z: δq has non-integer entry at row {0}")]
    NotACocycle(usize),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
