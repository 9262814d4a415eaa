use thiserror::Error;

/// Errors raised across the library and the CLI.
#[derive(Debug, Error)]
pub enum FszError {
    /// Caller violated a documented precondition.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Input is well-formed but does not describe a valid object
    /// (a non-permutation image list, a non-closed subset, ...).
    #[error("structural error: {0}")]
    Structural(String),

    #[error("group order {order} exceeds the size cap of {cap}")]
    CapExceeded { order: u128, cap: usize },

    /// A power-commutator presentation failed its consistency checks.
    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = FszError> = std::result::Result<T, E>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(FszError::Usage(msg.into()))
}
