use thiserror::Error;

/// Errors raised by the bound computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("numerical breakdown in floating-point simplex: {0}")]
    NumericalBreakdown(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("no valid certificate of degree {degree} (raise the degree)")]
    InfeasibleAtDegree { degree: usize },
    #[error("zonal kernel reduction failed: {0}")]
    ReductionFailure(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("commutant is not commutative; multiplicity-free reduction does not apply")]
    NoncommutativeCommutant,
    #[error("graph is not invariant under the group: {0}")]
    NotInvariant(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
