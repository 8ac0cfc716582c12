//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or argument violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A request exceeds a structural or budget limit (e.g. more simple
    /// edges than `L * R`, or an enumeration too large to be exact).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An iterative numerical routine failed to meet its tolerance.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Conditioning on an event of probability zero.
    #[error("conditioning event has zero mass")]
    ZeroMass,

    /// A trace file does not follow the documented format.
    #[error("malformed trace: {0}")]
    TraceFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
