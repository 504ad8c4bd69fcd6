use thiserror::Error;

/// Errors raised by the library. The variants line up with the CLI exit codes:
/// usage/domain/invalid-map map to 2, resource guards to 4.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! usage {
    ($($arg:tt)*) => { $crate::error::Error::Usage(format!($($arg)*)) };
}
pub(crate) use usage;
