use std::io;
use std::path::PathBuf;

use rankgpt_core::error::Error as CoreError;
use thiserror::Error;

/// Failures mapped onto the process exit-code contract.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed {what}: {detail}")]
    Malformed { what: &'static str, detail: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("internal check failed: {0}")]
    Assertion(String),
    #[error("decryption failed: {0}")]
    Decode(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Malformed { .. } | CliError::Io { .. } => 2,
            CliError::Assertion(_) => 3,
            CliError::Decode(_) => 4,
        }
    }

    pub fn malformed(what: &'static str, detail: impl ToString) -> CliError {
        CliError::Malformed { what, detail: detail.to_string() }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> CliError {
        CliError::Io { path: path.into(), source }
    }
}

/// Parameter problems are the caller's fault; anything the library reports
/// after validation passed is an internal failure.
impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        match e {
            CoreError::DecodingFailure { .. } => CliError::Decode(e.to_string()),
            CoreError::ConstructionFailure(_) | CoreError::KeygenExhausted(_) | CoreError::Singular => {
                CliError::Assertion(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}
