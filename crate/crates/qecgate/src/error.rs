use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qecgate_core::Error),

    #[error("{0}")]
    Invalid(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("verification failed: {0}")]
    Verify(String),
}

impl CliError {
    /// Process exit code: 2 for domain/usage errors, 3 for I/O, 1 for a
    /// failed `--verify`.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(_) | CliError::Invalid(_) => 2,
            CliError::Io { .. } | CliError::Csv(_) => 3,
            CliError::Verify(_) => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}
