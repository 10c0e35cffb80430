use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyadicError {
    #[error("denominator must be a power of two")]
    NotDyadic,
    #[error("malformed number {0:?}")]
    Malformed(String),
}

/// Failures raised by the surreal engine itself.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurrealError {
    #[error("order relation exceeded the descent limit of {limit} steps")]
    DescentLimit { limit: usize },
    #[error("genealogy tree exceeded the generation limit of {limit}")]
    GenerationLimit { limit: u32 },
    #[error("form is not a number")]
    NotANumber,
    #[error("evaluation exceeded time budget")]
    Timeout,
}

pub type Result<T, E = SurrealError> = std::result::Result<T, E>;
