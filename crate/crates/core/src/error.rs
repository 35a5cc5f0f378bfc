//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("variable index {j} out of range 1..={n}")]
    VariableOutOfRange { j: usize, n: usize },

    #[error("cannot decrement entry {j}: exponent is zero")]
    DecrementZero { j: usize },

    #[error("polynomial contexts do not match")]
    ContextMismatch,

    #[error("scalar modes do not match")]
    ModeMismatch,

    #[error("unknown variable {0} for this context")]
    UnknownVariable(String),

    #[error("no value assigned to variable {0}")]
    MissingAssignment(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("point does not lie on the hypersurface (residual {residual})")]
    NotOnHypersurface { residual: String },

    #[error("coefficient polynomial has degree {found}, limit is {limit}")]
    DegreeTooHigh { found: u32, limit: u32 },

    #[error("supplied tangent frame is linearly dependent (rank {rank} < {expected})")]
    DependentFrame { rank: usize, expected: usize },

    #[error("vector {index} is not tangent at the point")]
    NotTangent { index: usize },

    #[error("point outside the polydisc domain")]
    OutsideDomain,

    #[error("curvature hypothesis failed at {point:?}: laplacian {lhs} < required {rhs}")]
    HypothesisFailed {
        point: Vec<(f64, f64)>,
        lhs: f64,
        rhs: f64,
    },

    #[error("wedge selection is degenerate")]
    DegenerateSelection,

    #[error("malformed JSON input: {0}")]
    Json(String),
}
