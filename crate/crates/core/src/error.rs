use thiserror::Error;

/// Errors raised by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input is well formed but violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// The input could not be parsed.
    #[error("malformed input: {0}")]
    Malformed(String),
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Malformed(_) => "malformed",
            Error::Internal(_) => "internal",
        }
    }

    pub fn detail(&self) -> &str {
        match self {
            Error::Domain(s) | Error::Malformed(s) | Error::Internal(s) => s,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
