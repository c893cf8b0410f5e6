use thiserror::Error;

/// Errors surfaced by the kernel and the calculus layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("halfspace normal must be nonzero")]
    ZeroNormal,

    #[error("ray must be nonzero")]
    ZeroRay,

    #[error("max-affine function needs at least one piece")]
    EmptyPieces,

    #[error("function is improper: {0}")]
    Improper(String),

    #[error("invalid override: {0}")]
    InvalidOverride(String),

    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),

    #[error("set boundary is irrational at the queried point: {0}")]
    IrrationalBoundary(String),

    #[error("vector is not an epsilon-subgradient at the base point")]
    NotEpsSubgradient,

    #[error("epsilon has no rational square root; use a squared grid")]
    NoRationalSqrt,

    #[error("cell enumeration exceeded the configured bound ({limit})")]
    DimensionCap { limit: usize },

    #[error("formula requires the instance to satisfy a continuity hypothesis")]
    PreconditionContinuity,

    #[error("formula requires every index to be active at the reference point")]
    NotEverywhereActive,

    #[error("invalid epsilon grid: {0}")]
    BadGrid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
