use std::fmt;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Text input that does not follow one of the file formats.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Arguments outside the range an operation accepts.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two arrays (or an array and a row) whose shapes do not fit together.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An operation that requires distinct rows received a repeated one.
    #[error("array is not simple: row {row} occurs more than once")]
    NotSimple { row: String },

    /// An array lacks the strength an operation requires.
    #[error("array does not have strength {required}")]
    InsufficientStrength { required: usize },

    /// A construction produced output that failed independent verification.
    #[error("post-verification failed: {0}")]
    Verification(String),

    /// A search exceeded its node budget before reaching a verdict.
    #[error("search budget of {budget} nodes exhausted before a verdict")]
    BudgetExceeded { budget: u64 },

    /// Integer arithmetic left the supported range.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl fmt::Display) -> Self {
        Error::Parse {
            line,
            message: message.to_string(),
        }
    }

    pub(crate) fn param(message: impl fmt::Display) -> Self {
        Error::InvalidParameter(message.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
