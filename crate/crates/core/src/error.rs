use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource limit: {what} supports m <= {limit}, got m = {m}")]
    ResourceLimit {
        what: &'static str,
        limit: usize,
        m: usize,
    },
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("malformed function file: {0}")]
    Format(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::ResourceLimit { .. } => "resource-limit",
            Error::Solver(_) => "solver-failure",
            Error::Format(_) => "format",
            Error::Internal(_) => "internal",
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fails with [`Error::ResourceLimit`] when `m > limit`.
pub(crate) fn require_at_most(what: &'static str, m: usize, limit: usize) -> Result<()> {
    if m > limit {
        Err(Error::ResourceLimit { what, limit, m })
    } else {
        Ok(())
    }
}
