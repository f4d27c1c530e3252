use thiserror::Error;

/// Errors raised by the cohomology engine and the kernel calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("genus mismatch: expected {expected}, found {found}")]
    GenusMismatch { expected: usize, found: usize },
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("unknown catalog kernel `{0}`")]
    UnknownKernel(String),
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
