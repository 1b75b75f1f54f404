use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} variables")]
    Dimension { left: usize, right: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index {index} out of range 0..={max}")]
    Index { index: usize, max: usize },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("refused: {0}")]
    Refused(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
