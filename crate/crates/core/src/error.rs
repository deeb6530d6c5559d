use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("enumeration cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("pattern support does not cover {0}")]
    SupportViolation(String),

    #[error("alphabet mismatch: {0} states vs {1} states")]
    AlphabetMismatch(u8, u8),

    #[error("unsupported subgroup shape: {0}")]
    UnsupportedSubgroup(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal cross-check failed: {0}")]
    Inconsistent(String),

    #[error("empty language")]
    EmptyLanguage,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn cap(what: &'static str, needed: u128, cap: u128) -> Self {
        Error::CapExceeded { what, needed, cap }
    }
}
