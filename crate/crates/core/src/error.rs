use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("not a probability vector: {0}")]
    NotDistribution(String),

    #[error("row {row} is not a distribution (sum = {sum})")]
    NotStochastic { row: usize, sum: f64 },

    #[error("refusing to enumerate {count} items (limit {limit})")]
    TooLarge { count: u128, limit: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("conditional probability is undefined: output type has zero probability")]
    UnreachableType,

    #[error("channel is not strictly positive")]
    NotStrictlyPositive,

    #[error("infeasible rate: {0}")]
    InfeasibleRate(String),

    #[error("decomposition residual {0:e} exceeds tolerance")]
    Residual(f64),

    #[error("precondition not met: {0}")]
    Precondition(String),
}

pub type Result<T> = core::result::Result<T, Error>;
