use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected} entries, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("index {index} out of range for local dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("local dimension must be at least 2, got {0}")]
    LocalDimension(usize),
    #[error(
        "operator is not unitary: max |U^dag U - I| = {defect:.3e} exceeds tolerance {tol:.1e}"
    )]
    NotUnitary { defect: f64, tol: f64 },
    #[error("state is not normalized: sum of |a|^2 = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },
    #[error("controlled-U needs exactly {expected} blocks, got {found}")]
    BlockCount { expected: usize, found: usize },
    #[error("controlled-U block {index} is invalid: {reason}")]
    InvalidBlock { index: usize, reason: String },
    #[error("parameter must be finite, got {0}")]
    NonFiniteParameter(f64),
    #[error("at least {min} samples required, got {found}")]
    TooFewSamples { min: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
