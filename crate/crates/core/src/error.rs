use thiserror::Error;

/// Errors raised by the library. The CLI exits with code 2 on `Internal` and
/// code 1 on everything else.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("integrality error: {0}")]
    Integrality(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("convention error: {0}")]
    Convention(String),
    #[error("period too small: {0}")]
    PeriodTooSmall(String),
    #[error("ill-posed series: {0}")]
    IllPosed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by user input rather than a broken invariant.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Validation(_)
                | Error::Integrality(_)
                | Error::Parse(_)
                | Error::Convention(_)
                | Error::DimensionMismatch(_)
                | Error::PeriodTooSmall(_)
                | Error::IllPosed(_)
                | Error::Resource(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
