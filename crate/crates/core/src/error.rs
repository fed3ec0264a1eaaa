use thiserror::Error;

/// Errors raised by constructions that cannot produce a result.
///
/// Checks that merely fail return a [`crate::Report`] instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("composite leaves the truncation: {0}")]
    NotClosed(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("not a groupoid: {0} has no inverse")]
    NotAGroupoid(String),
    #[error("no inert-active factorization of {0}")]
    MissingFactorization(String),
    #[error("truncation escape: {0}")]
    TruncationEscape(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
