//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input violates an operation precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A configured cap (size, iteration, or memory budget) would be exceeded.
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    /// The operation is not defined for this input family.
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    /// An internal numeric invariant failed; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn limit(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }
}
