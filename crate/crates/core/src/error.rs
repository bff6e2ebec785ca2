use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size {value} out of range (maximum {max})")]
    Size { value: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },

    #[error("matrix is singular: zero pivot at index {pivot}")]
    Singular { pivot: usize },

    #[error("invalid node set: {0}")]
    InvalidNodes(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("spectral check failed at column {column}: {reason}")]
    SpectralCheck { column: usize, reason: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
