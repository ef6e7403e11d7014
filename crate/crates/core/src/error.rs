use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero in the golden field")]
    DivisionByZero,

    #[error("invalid Zeckendorf word: {0}")]
    InvalidWord(String),

    #[error("d(n) is undefined for the empty word (n = 0)")]
    EmptyWord,

    #[error("value does not fit in 64 bits")]
    Overflow,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precision error: {0}")]
    Precision(String),

    #[error("too close to a zero of 1 - 2β^-s + β^-3s (|denominator| = {distance:e})")]
    PoleProximity { distance: f64 },

    #[error("series did not converge within {max_terms} terms")]
    NoConvergence { max_terms: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable tag used in serialized error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::InvalidWord(_) => "invalid_word",
            Error::EmptyWord => "empty_word",
            Error::Overflow => "overflow",
            Error::Domain(_) => "domain_error",
            Error::Precision(_) => "precision_error",
            Error::PoleProximity { .. } => "pole_proximity",
            Error::NoConvergence { .. } => "no_convergence",
            Error::Parse { .. } => "parse_error",
            Error::Config(_) => "config_error",
            Error::Io(_) => "io_error",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
