use thiserror::Error;

/// Errors shared by every counting path.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("walk is not reflectable: {0}")]
    NotReflectable(String),

    #[error("point {0} is not strictly inside the chamber")]
    NotInterior(String),

    #[error("start or end configuration has colliding particles")]
    CollidingConfiguration,

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
