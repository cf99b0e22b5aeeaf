use thiserror::Error;

/// Failures reported by the library. Everything except `Parse` is a
/// precondition or certification problem (CLI exit code 2).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("degree cap {cap} reached with {found} of {nullity} minimal indices found")]
    DegreeCap { cap: usize, found: usize, nullity: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn certification<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Certification(msg.into()))
}
