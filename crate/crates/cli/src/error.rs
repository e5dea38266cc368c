use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: line {line}: {msg}")]
    Csv { path: String, line: u64, msg: String },

    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("invalid mixture spec {path}: {msg}")]
    Mixture { path: PathBuf, msg: String },

    #[error(transparent)]
    Core(#[from] score_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// 1 for bad input, 2 for failures on our side.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Write { .. } | CliError::Internal(_) => 2,
            _ => 1,
        }
    }
}
