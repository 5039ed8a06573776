//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in Q(zeta_{conductor})")]
    DivisionByZero { conductor: u32 },

    #[error("unsupported reflection group type: {0}")]
    UnsupportedType(String),

    #[error("group of order {required} exceeds the cap {cap}")]
    GroupTooLarge { required: u64, cap: u64 },

    #[error("the zero vector is not admissible here")]
    ZeroVector,

    #[error("the zero subspace has no nonzero points to minimize over")]
    EmptyEigenspace,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("exponents a = {a} and b = {b} must be coprime")]
    NotCoprime { a: i64, b: u32 },

    #[error("the leading coefficient vector must be nonzero")]
    ZeroLeadingTerm,

    #[error("{0} has no classical invariant model; only the quadratic invariant is available")]
    QuadraticOnly(String),

    #[error("theorem assertion violated: {0}")]
    TheoremViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
