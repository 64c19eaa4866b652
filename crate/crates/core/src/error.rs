use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("variable `{0}` does not occur in the polynomial")]
    UnknownVariable(String),

    #[error("polynomial has non-integer coefficients")]
    NonIntegerCoefficients,

    #[error("search space too large: {0}")]
    TooLarge(String),

    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(char),

    #[error("alphabets differ: {0:?} vs {1:?}")]
    AlphabetMismatch(Vec<char>, Vec<char>),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("invalid monoid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid transducer: {0}")]
    InvalidTransducer(String),

    #[error("function is not commutative: f({0}) != f({1})")]
    NotCommutative(String, String),

    #[error("value does not fit in a 64-bit integer: {0}")]
    Overflow(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
