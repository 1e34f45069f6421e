use thiserror::Error;

/// Errors raised by carriers, closures and the file formats.
///
/// Law violations of a well-formed table are not errors; they are reported
/// through [`crate::carrier::ValidationReport`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed table: {0}")]
    Structural(String),
    #[error("table violates {0}")]
    LawViolation(String),
    #[error("element `{0}` is not in the carrier")]
    NotInCarrier(String),
    #[error("invalid element `{0}`")]
    InvalidElement(String),
    #[error("invalid catalog parameters: {0}")]
    InvalidParams(String),
    #[error("chain descriptor is not increasing at position {0}")]
    NotIncreasing(usize),
    #[error("no limit form for this chain on backend `{0}`")]
    NoLimitForm(String),
    #[error("fuel {0} is exhausted before any chain could be tested")]
    FuelExhausted(u64),
    #[error("basis mode requires a basis")]
    MissingBasis,
    #[error("{0} is not supported on backend `{1}`")]
    Unsupported(String, String),
    #[error("bounds must be positive: {0}")]
    ZeroBound(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("not a submonoid: {0}")]
    NotASubmonoid(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("malformed query: {0}")]
    MalformedQuery(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
