use thiserror::Error;

use crate::dsl::parse::ParseError;

/// Every failure the library can report.
///
/// Variants fall into two families: domain errors (bad lengths, indices or
/// parameters handed to a well-formed computation) and input errors (text
/// that could not be parsed or ingested). The CLI maps them onto different
/// exit codes through [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("zero entry at index {0}")]
    ZeroEntry(usize),

    #[error("index {index} out of range for length {len}")]
    OutOfRange { index: i64, len: usize },

    #[error("inverted bounds: from {from} > to {to}")]
    InvertedBounds { from: i64, to: i64 },

    #[error("sequence too short: length {len}, need at least {min}")]
    TooShort { len: usize, min: usize },

    #[error("negative power {0}")]
    NegativePower(i64),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("{0}")]
    Usage(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("non-contiguous b-file index at line {line}: expected {expected}, found {found}")]
    NonContiguousIndex {
        line: usize,
        expected: String,
        found: String,
    },

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// 2 for input and usage errors, 3 for domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::Format { .. }
            | Error::NonContiguousIndex { .. }
            | Error::UnknownCheck(_)
            | Error::Usage(_)
            | Error::Io(_) => 2,
            Error::LengthMismatch { .. }
            | Error::ZeroEntry(_)
            | Error::OutOfRange { .. }
            | Error::InvertedBounds { .. }
            | Error::TooShort { .. }
            | Error::NegativePower(_)
            | Error::BadParameter(_) => 3,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
