use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for arity {arity}")]
    VarOutOfRange { index: usize, arity: usize },

    #[error("expected {expected} substitution images, got {got}")]
    ImageCount { expected: usize, got: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("logarithm argument must be 1 modulo h")]
    LnArgument,

    #[error("exponential argument must vanish modulo h")]
    ExpArgument,

    #[error("h-valuation must be at least 1: {0}")]
    Valuation(String),

    #[error("no unit pivot available in column {0}; rank depends on eps")]
    NonUnitPivot(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("input error at line {line}, column {column}: {message}")]
    Format { line: usize, column: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("construction failed: {0}")]
    Construction(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse { column, message: message.into() }
    }
}
