use thiserror::Error as ThisError;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("not a unit: {0}")]
    NonUnit(String),
    #[error("branch error: {0}")]
    Branch(String),
    #[error("divergent substitution: {0}")]
    Divergence(String),
    #[error("out of order: {0}")]
    OutOfOrder(String),
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported scope: {0}")]
    Scope(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
