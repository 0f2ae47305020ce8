use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] widthlab::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{failed} of {total} criteria did not pass")]
    Mismatch { failed: usize, total: usize },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Usage(_) => "invalid-argument",
            CliError::Io { .. } => "io",
            CliError::Mismatch { .. } => "mismatch",
        }
    }

    /// 2 for bad input, 3 for resource limits, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(widthlab::Error::ResourceLimit { .. }) => 3,
            CliError::Core(widthlab::Error::InvalidArgument(_) | widthlab::Error::Format(_))
            | CliError::Usage(_)
            | CliError::Io { .. } => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self.to_string(), "kind": self.kind() }).to_string()
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
