use thiserror::Error;

/// Crate-wide error type. Variants are grouped by how a front end should
/// report them: bad input is the caller's fault, the rest are runtime
/// failures (lost precision, numeric breakdown, resource caps).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The tracked error bound became too large to decide a comparison
    /// (for example a fractional part landing on an indicator endpoint).
    #[error("precision exhausted: {0}")]
    Precision(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code contract: 0 success, 1 input error, 2 numeric or
    /// resource failure.
    #[must_use]
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
