use thiserror::Error;

/// Errors produced by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch at index {index}: expected {expected}, got {got}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },

    #[error("tuple length {got} does not match norm arity {expected}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("empty tuple")]
    EmptyTuple,

    #[error("element kind does not match norm kind at index {index}")]
    KindMismatch { index: usize },

    #[error("anchors are linearly dependent")]
    DependentAnchors,

    #[error("functional is unbounded: {0}")]
    Unbounded(String),

    #[error("point lies outside the functional's carrier (residual {residual:.3e})")]
    OutsideCarrier { residual: f64 },

    #[error("subspace decomposition failed: {0}")]
    Decomposition(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
