use crate::scalar::ArithError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Arithmetic(#[from] ArithError),
    /// An operation would produce an element beyond the materialized degrees.
    #[error("degree {degree} exceeds the cap {cap} of {what}")]
    Capacity {
        what: &'static str,
        degree: usize,
        cap: usize,
    },
    /// Malformed or inconsistent input data.
    #[error("input error: {0}")]
    Input(String),
    /// Well-formed data used in a way the operation does not allow.
    #[error("usage error: {0}")]
    Usage(String),
    /// The instance lacks a structure the operation requires.
    #[error("refused: {0}")]
    Refused(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code class: 2 for bad input or usage, 1 otherwise.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Input(_) | Error::Usage(_) | Error::Json(_) | Error::Io(_) | Error::Capacity { .. }
        )
    }
}
