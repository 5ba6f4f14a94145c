use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] shtuka_core::Error),
    #[error("{}: file not found", path.display())]
    NotFound { path: PathBuf },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{context}: malformed JSON: {message}")]
    Json { context: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    CheckFailed(String),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn json(context: impl Into<String>, err: impl std::fmt::Display) -> Self {
        CliError::Json { context: context.into(), message: err.to_string() }
    }

    /// 3 for budget and precision refusals, 1 for failed checks, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(shtuka_core::Error::Budget { .. } | shtuka_core::Error::Precision { .. }) => 3,
            CliError::CheckFailed(_) => 1,
            _ => 2,
        }
    }
}
