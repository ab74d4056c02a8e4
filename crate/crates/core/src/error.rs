use thiserror::Error;

/// Errors raised by the algebra, the induction moves and the class enumerations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("pair `{0}` is reducible")]
    Reducible(String),

    #[error("pair `{0}` is not standard")]
    NotStandard(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("alphabet of size {size} exceeds the limit of {limit} for {what}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("budget of {limit} members exceeded after visiting {visited} (frontier {frontier})")]
    BudgetExceeded {
        limit: usize,
        visited: usize,
        frontier: usize,
    },

    #[error("cache error at line {line}: {message}")]
    Cache { line: usize, message: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
