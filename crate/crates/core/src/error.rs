use thiserror::Error;

/// Errors produced by partition construction, transport solving and sweeps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index support is not a down-set: {0}")]
    NotDownSet(String),
    #[error("entries increase along an axis: {0}")]
    NotMonotone(String),
    #[error("non-positive entry {value} at index {index:?}")]
    NonPositiveEntry { index: Vec<usize>, value: i64 },
    #[error("malformed partition array: {0}")]
    Malformed(String),
    #[error("partition dimension must be at least 1, got {0}")]
    BadDimension(usize),
    #[error("permutation of size {found} used where size {expected} is required")]
    SizeMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("instance too large: {what} is {size}, guard allows at most {limit}")]
    InstanceTooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("measures live in dimensions {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("cost matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("cost kind {0} has non-integer values; use the approximate solver")]
    NonIntegerCosts(&'static str),
    #[error("transport plan violates its marginals: {0}")]
    MarginalMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
