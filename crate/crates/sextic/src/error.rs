use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("prime {0} divides the discriminant")]
    RamifiedPrime(u64),
    #[error("polynomial is reducible")]
    Reducible,
    #[error("not squarefree: {0}")]
    NotSquarefree(String),
    #[error("inconsistent evidence: {0}")]
    InconsistentEvidence(String),
    #[error("precision ceiling of {0} bits exceeded")]
    Precision(u32),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit status for this error: 1 domain, 2 usage, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Degenerate(_)
            | Error::Reducible
            | Error::NotSquarefree(_)
            | Error::RamifiedPrime(_) => 1,
            Error::Parse(_) | Error::Config(_) => 2,
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
