use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arguments that do not fit the operation's shape (lengths, ordering, mixed bases).
    #[error("usage error: {0}")]
    Usage(String),
    /// Arguments of the right shape but outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// A request the exact engine declines to answer.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
