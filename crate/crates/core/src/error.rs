use thiserror::Error;

use crate::stats::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine failed (eigen-solver, optimizer, bisection bracket).
    #[error("computation error: {0}")]
    Computation(String),

    /// The input document is not well-formed.
    #[error("parse error: {0}")]
    Parse(String),

    /// The input document has missing, extra or mistyped keys.
    #[error("schema error: {0}")]
    Schema(String),

    /// A probability in the input lies outside [0, 1].
    #[error("range error: {0}")]
    Range(String),

    /// Statistics failed validation; the report carries the residuals.
    #[error("validation failed: {0}")]
    Validation(Box<ValidationReport>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
