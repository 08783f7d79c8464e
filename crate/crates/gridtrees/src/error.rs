//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors raised by graph construction, enumeration, sampling, and the
/// exact MST machinery.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A caller-supplied argument violates a precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A configured resource cap was exceeded; the message names the cap.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// An internal exactness invariant failed; this signals an arithmetic bug.
    #[error("computation error: {0}")]
    Computation(String),
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
