use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by geometric constructions and numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("dimension {0} outside the supported range 1..=8")]
    DimensionOutOfRange(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// The input spans only a lower-dimensional affine flat. The flat is
    /// returned so callers can redo the computation in intrinsic coordinates.
    #[error("degenerate input: affine hull has dimension {}", .basis.len())]
    Degenerate { origin: Vec<f64>, basis: Vec<Vec<f64>> },
    #[error("the origin is not an interior point")]
    OriginNotInterior,
    #[error("point is not interior to the body")]
    NotInterior,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("set is empty")]
    Empty,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("point lies outside the admissible region")]
    OutsideDomain,
    #[error("quadrature did not converge (estimated relative error {0:e})")]
    Quadrature(f64),
    #[error("no full-dimensional sample after {0} retries")]
    GenerationFailed(usize),
    #[error("linear program is infeasible")]
    Infeasible,
}

pub type Result<T> = core::result::Result<T, GeomError>;

pub(crate) fn invalid(msg: impl Into<String>) -> GeomError {
    GeomError::InvalidParameter(msg.into())
}
