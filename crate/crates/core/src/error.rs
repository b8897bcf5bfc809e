use thiserror::Error;

/// Errors surfaced by every layer of the library.
///
/// Each variant maps onto a stable machine-readable code (see [`Error::code`])
/// and onto a CLI exit status (see [`Error::exit_code`]).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("element is not a square: {0}")]
    NonSquare(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("bad reduction: {0}")]
    BadReduction(String),
    #[error("supports overlap: {0}")]
    SupportOverlap(String),
    #[error("non-ordinary reduction, supply W explicitly: {0}")]
    NonOrdinary(String),
    #[error("points lie in different residue discs: {0}")]
    DifferentDiscs(String),
    #[error("form needs a logarithmic term: {0}")]
    LogTermRequired(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid job: {0}")]
    Validation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DOMAIN",
            Error::NonSquare(_) => "NON_SQUARE",
            Error::NotInvertible(_) => "NOT_INVERTIBLE",
            Error::PrecisionExhausted(_) => "PRECISION_EXHAUSTED",
            Error::BadReduction(_) => "BAD_REDUCTION",
            Error::SupportOverlap(_) => "SUPPORT_OVERLAP",
            Error::NonOrdinary(_) => "NON_ORDINARY_W",
            Error::DifferentDiscs(_) => "DIFFERENT_DISCS",
            Error::LogTermRequired(_) => "LOG_TERM_REQUIRED",
            Error::Unsupported(_) => "UNSUPPORTED",
            Error::Validation(_) => "VALIDATION",
            Error::Parse(_) => "PARSE",
            Error::Io(_) => "IO",
        }
    }

    /// 2 for malformed input, 3 for a failed mathematical precondition,
    /// 4 when the requested precision cannot be delivered.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Parse(_) | Error::Io(_) => 2,
            Error::PrecisionExhausted(_) => 4,
            _ => 3,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
