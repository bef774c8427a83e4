//! Crate-wide error type.

use std::path::PathBuf;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition or argument validation failed.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A file or serialized payload did not match its expected format.
    #[error("format error: {0}")]
    Format(String),

    /// The design matrix of a least-squares problem is rank deficient.
    #[error("singular system: {0}")]
    Singular(String),

    /// Training produced a non-finite loss.
    #[error("non-finite loss: {0}")]
    NonFinite(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
