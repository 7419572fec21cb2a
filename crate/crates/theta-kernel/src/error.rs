use std::io;
use std::path::PathBuf;

use theta_kernel_core::Error as CoreError;

/// Errors of the file, data and command layer.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("malformed JSON in {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("bundled data in {path} disagrees with the computed value: {detail}")]
    DataMismatch { path: PathBuf, detail: String },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("serialization failed: {0}")]
    Serialize(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    /// Process exit code: 2 for bad input, 1 for internal failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Write { .. } | CliError::Json { .. } | CliError::Input(_) => 2,
            CliError::Core(e) => match e {
                CoreError::NotOddPrime(_)
                | CoreError::ZeroArgument
                | CoreError::InvalidMatrix(_)
                | CoreError::Singular
                | CoreError::OutOfRange { .. }
                | CoreError::ShapeMismatch(_)
                | CoreError::InvalidDiscriminant(_)
                | CoreError::NotPositiveDefinite
                | CoreError::BoundInsufficient { .. }
                | CoreError::GuardExceeded(_) => 2,
                _ => 1,
            },
            CliError::DataMismatch { .. } | CliError::Serialize(_) => 1,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Serialize(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Serialize(e.to_string())
    }
}
