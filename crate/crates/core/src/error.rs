//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong, in one flat enum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field order {order} exceeds the supported maximum {max}")]
    FieldTooLarge { order: u128, max: u64 },

    #[error("division by zero in a finite field")]
    DivisionByZero,

    #[error("elements belong to different fields ({0} vs {1})")]
    IncompatibleFields(u64, u64),

    #[error("{0} does not embed into {1}: incompatible characteristic or degree")]
    NoEmbedding(u64, u64),

    #[error("invalid curve family: {0}")]
    InvalidFamily(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("estimated work {estimate} exceeds budget {budget}")]
    BudgetExceeded { estimate: u64, budget: u64 },

    #[error("prime power {q} exceeds the configured cap {cap}")]
    QCapExceeded { q: u64, cap: u64 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
