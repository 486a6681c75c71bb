use std::fmt::Display;
use std::path::Path;

/// Failure of a pipeline stage, split by who has to fix it.
#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    /// Bad flags, config values, missing columns or unreadable resources.
    #[error("{0}")]
    Config(String),
    /// Input data that cannot be processed.
    #[error("{0}")]
    Data(String),
}

impl PipelineError {
    pub fn config(msg: impl Display) -> Self {
        PipelineError::Config(msg.to_string())
    }

    pub fn data(msg: impl Display) -> Self {
        PipelineError::Data(msg.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Config(_) => 2,
            PipelineError::Data(_) => 1,
        }
    }

    pub(crate) fn read(path: &Path, err: impl Display) -> Self {
        PipelineError::Config(format!("cannot read {}: {err}", path.display()))
    }

    pub(crate) fn write(path: &Path, err: impl Display) -> Self {
        PipelineError::Data(format!("cannot write {}: {err}", path.display()))
    }
}

pub type Result<T, E = PipelineError> = std::result::Result<T, E>;
