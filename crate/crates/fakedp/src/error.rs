use thiserror::Error;

use crate::parse::ParseError;
use crate::registry::LoadError;

/// Failures of a command, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("{0}")]
    Compute(#[from] fakedp_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Load(_) => 3,
            CliError::Compute(e) => match e {
                fakedp_core::Error::UnknownComponent(_) | fakedp_core::Error::LengthMismatch { .. } => 2,
                _ => 3,
            },
        }
    }
}
