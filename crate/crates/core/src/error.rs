use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("weight {0:?} is not dominant")]
    NonDominant(Vec<i64>),

    #[error("generator index {index} out of range for {what}")]
    IndexOutOfRange { index: usize, what: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("expected a one-dimensional space of highest weight vectors, found dimension {0}")]
    Multiplicity(usize),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
