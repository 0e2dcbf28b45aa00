use thiserror::Error;

/// Everything that can go wrong while building groups or checking curves.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range (valid: 1..={len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("free Lie algebra of rank {r} and step {s} has dimension {dim}, above the cap {cap}")]
    ResourceCap { r: usize, s: usize, dim: usize, cap: usize },

    #[error("residual check failed: {0}")]
    Residual(String),

    #[error("cache file {path} rejected: {reason}")]
    CorruptCache { path: String, reason: String },

    #[error("invalid control law: {0}")]
    InvalidControl(String),

    #[error("quotient selection row {row} is not the unit row e_{col}")]
    QuotientUnitRow { row: usize, col: usize },

    #[error("zeta is not a Lie homomorphism: bracket of Y{i} and Y{j} is not preserved")]
    QuotientHomomorphism { i: usize, j: usize },

    #[error("zeta does not preserve layers: entry ({i}, {j}) links degree {di} to degree {dj}")]
    QuotientLayer { i: usize, j: usize, di: usize, dj: usize },

    #[error("invalid quotient: {0}")]
    InvalidQuotient(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
