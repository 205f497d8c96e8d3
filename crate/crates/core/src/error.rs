use thiserror::Error;

/// Errors raised by the laboratory operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not found: {0}")]
    NotFound(String),

    /// A numerical procedure did not reach its tolerance. `estimate` is the
    /// best value obtained and `error` the error bound attached to it.
    #[error("convergence failure: {reason} (best estimate {estimate:e}, error bound {error:e})")]
    ConvergenceFailure {
        reason: String,
        estimate: f64,
        error: f64,
    },

    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
