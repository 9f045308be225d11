//! Library side of the `eulerint` command: document formats, sensor
//! configs, rendering and the command implementations.

pub mod commands;
pub mod config;
pub mod document;
pub mod render;

use thiserror::Error;

/// Failures mapped to process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<eulerint::Error> for CliError {
    fn from(e: eulerint::Error) -> Self {
        CliError::Precondition(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
