use thiserror::Error;

/// Errors raised by the geometric core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension must be at least 2, got {0}")]
    Dimension(usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("axis {axis} out of range 1..={n}")]
    AxisOutOfRange { axis: usize, n: usize },

    #[error("direction is not unit length (|d| = {norm})")]
    NotUnit { norm: f64 },

    #[error("origin {0:?} lies outside the scene bounds")]
    OriginOutsideBounds(Vec<f64>),

    #[error("charge {charge}: transformed direction cosines are degenerate (|c| = {norm:e})")]
    DegenerateDirection { charge: usize, norm: f64 },

    #[error("charges {first} and {second} lie within epsilon of each other")]
    ChargesTooClose { first: usize, second: usize },

    #[error("point {0:?} is not covered by any chart")]
    Uncovered(Vec<f64>),

    #[error("fundamental tensor is singular at y = {0:?} (too close to the origin)")]
    Singular(Vec<f64>),

    #[error("models are built over different point classes")]
    ClassMismatch,

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
