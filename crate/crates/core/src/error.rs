use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid order s = {0}: must be positive and finite")]
    InvalidOrder(f64),

    #[error("invalid dimension {0}: supported dimensions are 1, 2 and 3")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite coordinate in point")]
    NonFinite,

    #[error("coincident points: kernel is singular on the diagonal")]
    CoincidentPoints,

    #[error("singular evaluation: {0}")]
    Singular(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("insufficient smoothness: {0}")]
    Smoothness(String),

    #[error("classical branch: sigma = 1 has no fractional part, use the integer Laplacian path")]
    ClassicalBranch,

    #[error("wrong branch: {0}")]
    Branch(String),

    #[error("wrong regime: {0}")]
    Regime(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("grid too small: {0}")]
    Extent(String),

    #[error("integral diverges: {0}")]
    Divergent(String),

    #[error("quadrature did not converge: value {value:e}, error estimate {err:e}")]
    NotConverged { value: f64, err: f64 },

    #[error("unknown check: {0}")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
