use thiserror::Error;

/// Errors produced by the exact matrix and polynomial routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not invertible: zero diagonal entry in row {row}")]
    NotInvertible { row: usize },

    #[error("structure error: {0}")]
    Structure(String),

    #[error("H description too short: {what} needs at least {required} entries, got {got}")]
    SpecTooShort {
        what: &'static str,
        required: usize,
        got: usize,
    },

    #[error("exactness window exceeded: {what} requires truncation size T >= {required}, have {have}")]
    WindowExceeded {
        what: String,
        required: usize,
        have: usize,
    },

    #[error("alpha_{index} is zero; a three-term recurrence needs every alpha_k (k >= 1) nonzero")]
    ZeroAlpha { index: usize },

    #[error("family parameter a must be nonzero")]
    ZeroA,

    #[error("operation requires the {expected} family, got {got}")]
    WrongFamily {
        expected: &'static str,
        got: &'static str,
    },

    #[error("polynomial of degree {degree} needs {required} moments, only {available} available")]
    InsufficientMoments {
        degree: usize,
        required: usize,
        available: usize,
    },

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("internal property violation: {0}")]
    PropertyViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn window(what: impl Into<String>, required: usize, have: usize) -> Self {
        Error::WindowExceeded {
            what: what.into(),
            required,
            have,
        }
    }
}
