use thiserror::Error;

/// Errors reported by analysis, protocol and simulation entry points.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid process id {0:?}")]
    InvalidProcessId(String),
    #[error("unknown process {0}")]
    UnknownProcess(String),
    #[error("universe is empty")]
    EmptyUniverse,
    #[error("universe has {0} processes, at most 64 are supported")]
    UniverseTooLarge(usize),
    #[error("exhaustive search over {size} processes exceeds the capacity bound of {bound} (set QUORUMLACE_CAPACITY to raise it)")]
    Capacity { size: usize, bound: usize },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
