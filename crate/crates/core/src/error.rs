use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error(
        "matrix is singular: pivot {pivot:e} below threshold relative to max pivot {max_pivot:e}"
    )]
    Singular { pivot: f64, max_pivot: f64 },

    #[error("matrix is not Hermitian (relative residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("gate is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("entry data has length {len}, expected {expected}")]
    BadShape { len: usize, expected: usize },

    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },

    #[error("state is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("negative value {value:e} beyond tolerance in {context}")]
    NegativeWeight { context: &'static str, value: f64 },

    #[error("formula produced non-physical state at these parameters (min eigenvalue {min_eigenvalue:e})")]
    NonPhysical { min_eigenvalue: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("eigen iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
