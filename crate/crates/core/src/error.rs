use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A grid dimension that the chosen encoding cannot represent.
    #[error("invalid grid dimensions {width}x{height}: {reason}")]
    Dimensions {
        width: usize,
        height: usize,
        reason: &'static str,
    },

    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },

    #[error("need at least {needed} data points, got {available}")]
    InsufficientData { needed: usize, available: usize },

    #[error("unknown task `{0}` (valid tasks: histogram, gol, knn)")]
    UnknownTask(String),

    #[error("unknown variant `{variant}` for task {task} (valid: {valid})")]
    UnknownVariant {
        task: &'static str,
        variant: String,
        valid: String,
    },

    #[error("verification failed for {variant}: {detail}")]
    Verification { variant: String, detail: String },

    #[error(transparent)]
    Format(#[from] FormatError),

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub fn parameter(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Parameter {
            name,
            reason: reason.into(),
        }
    }
}

/// A malformed input file. `offset` is the byte position where decoding
/// failed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("bad magic at offset {offset}: expected {expected:?}, found {found:?}")]
    BadMagic {
        offset: u64,
        expected: String,
        found: String,
    },

    #[error("truncated file at offset {offset}: need {needed} bytes, have {available}")]
    Truncated {
        offset: u64,
        needed: u64,
        available: u64,
    },

    #[error("invalid header field at offset {offset}: {reason}")]
    Header { offset: u64, reason: String },

    #[error("{extra} trailing bytes after payload at offset {offset}")]
    TrailingBytes { offset: u64, extra: u64 },
}

impl FormatError {
    pub fn offset(&self) -> u64 {
        match self {
            FormatError::BadMagic { offset, .. }
            | FormatError::Truncated { offset, .. }
            | FormatError::Header { offset, .. }
            | FormatError::TrailingBytes { offset, .. } => *offset,
        }
    }
}
