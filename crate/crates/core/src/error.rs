use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a square: {0}")]
    NotASquare(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Schema(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("algebra is not definite: {0}")]
    NotDefinite(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("consistency check failed: {0}")]
    Mismatch(String),
    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),
}

impl Error {
    /// Whether the error stems from malformed input rather than mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Schema(_))
    }
}
