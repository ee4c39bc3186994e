use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("{path}: missing header field '{key}'")]
    MissingHeader { path: String, key: String },

    #[error("invalid scenario: {0}")]
    Scenario(String),

    #[error(transparent)]
    Core(#[from] decaylab_core::Error),
}

impl HarnessError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// Process exit code classification: 2 for data problems, 3 for model
    /// refusals (breakdown region, missing plateau). Usage errors exit 1
    /// before any of this runs.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Core(decaylab_core::Error::BreakdownRegion { .. })
            | Self::Core(decaylab_core::Error::NoPlateau) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
