use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a character: {0}")]
    NotACharacter(String),

    #[error("uncertified: {0}")]
    Uncertified(String),

    #[error("result escapes the certified region: {0}")]
    Escaped(String),

    #[error("map is not a self-map of the poset: {0}")]
    NotSelfMap(String),

    #[error("inconsistent inputs, negative kernel coefficient at {0}")]
    NegativeKernel(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("refusing enumeration of about {estimate} objects (limit {limit})")]
    TooLarge { estimate: u128, limit: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
