use thiserror::Error;

/// Errors produced by tensor construction, decomposition, and search.
#[derive(Debug, Error)]
pub enum GmeError {
    #[error("tensor has zero Frobenius norm")]
    ZeroTensor,

    #[error("non-finite amplitude at flat index {0}")]
    NonFiniteAmplitude(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("tensor is not unit-normalized: Frobenius norm = {0}")]
    NotNormalized(f64),

    #[error("expected a 2-way tensor, got {0} modes")]
    NotMatrix(usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("no catalog state phi_{{{n},{index}}}")]
    UnknownCatalogIndex { n: usize, index: usize },

    #[error("party count {0} exceeds the partition enumeration limit of 12")]
    TooManyParties(usize),

    #[error("tensor would hold {requested} amplitudes, memory cap is {cap}")]
    CapacityExceeded { requested: u128, cap: u128 },

    #[error("search space of {requested} supports exceeds cap {cap}")]
    CapExceeded { requested: u128, cap: u128 },

    #[error("malformed state file: {0}")]
    MalformedStateFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, GmeError>;
