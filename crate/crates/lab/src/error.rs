use thiserror::Error;

/// Errors surfaced by the command-line front end, each with a fixed exit code.
#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Core(#[from] acm_core::Error),
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("malformed sieve file: {0}")]
    Format(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl LabError {
    /// 2 validation, 3 resource, 4 failed verdict, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Core(acm_core::Error::Validation(_) | acm_core::Error::Domain(_)) => 2,
            LabError::Core(acm_core::Error::Resource(_)) => 3,
            LabError::Usage(_) => 2,
            LabError::Verification(_) => 4,
            LabError::Format(_) | LabError::Io(_) | LabError::Json(_) => 1,
        }
    }
}

pub type Result<T, E = LabError> = std::result::Result<T, E>;
