use thiserror::Error;

/// Errors raised by the library. Validation failures name the violated
/// invariant so front ends can report them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("distinct-entry violation: {0} is already present")]
    DuplicateEntry(usize),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("permutations are equal; ratio undefined at distance zero")]
    ZeroDistance,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("search space too large: {what} (estimated {estimate} evaluations, limit {limit})")]
    TooLarge {
        what: String,
        estimate: u128,
        limit: u128,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
