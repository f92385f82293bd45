use thiserror::Error;

/// Errors raised by the library. Check failures are not errors; they are
/// reported as [`crate::engine::CheckResult`] values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported scalar domain: {0}")]
    UnsupportedDomain(String),
    #[error("factorization failed at {witness}: {reason}")]
    Factorization { witness: String, reason: String },
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
