use thiserror::Error;

/// Errors raised anywhere in the zeta-function pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The input violates a documented precondition (for example it is not
    /// absolutely irreducible, or a coordinate line is a component).
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    /// The precision p^λ is too small to pin down a point count.
    #[error("precision too small: {0}")]
    Precision(String),

    /// A consistency check inside the pipeline failed.
    #[error("internal invariant failed: {0}")]
    Invariant(String),

    #[error("naive enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
