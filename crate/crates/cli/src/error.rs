use std::path::{Path, PathBuf};

use thiserror::Error;

/// Failures of a command, sorted into the three exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] orbitlab_core::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn format(path: &Path, message: impl Into<String>) -> Self {
        CliError::Format {
            path: path.to_path_buf(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_)
            | CliError::Core(orbitlab_core::Error::InvalidArgument(_))
            | CliError::Core(orbitlab_core::Error::NoCrossing { .. }) => EXIT_USAGE,
            _ => EXIT_INVARIANT,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
