use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not symmetric (asymmetry {asymmetry:e} exceeds tolerance {tolerance:e})")]
    NonSymmetricInput { asymmetry: f64, tolerance: f64 },

    #[error("operation requires a nonzero matrix")]
    ZeroMatrix,

    #[error("direction matrix is zero")]
    ZeroDirection,

    #[error("base fields differ ({left} vs {right})")]
    FieldMismatch { left: String, right: String },

    #[error("elements belong to different algebras ({left} vs {right})")]
    AlgebraMismatch { left: String, right: String },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("input is a scalar multiple of a unitary")]
    UnitaryInput,

    #[error("dimension n = {0} is too small for this construction")]
    DimensionTooSmall(usize),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("chain is not maximal: {0}")]
    NotMaximalChain(String),

    #[error("chain has length {0}, at least 2 is required")]
    ChainTooShort(usize),

    #[error("dimension {dim} and chain length {n} match no simple finite-dimensional C*-algebra")]
    NotSimpleFiniteDimensional { dim: usize, n: usize },

    #[error("algebra has {0} blocks, a simple algebra is required")]
    NotSimple(usize),

    #[error("one-dimensional algebras cannot be classified from orthogonality data")]
    DimensionOne,

    #[error("operation requires the complex base field")]
    FieldNotComplex,

    #[error("element does not conform to the block structure: {0}")]
    BlockMismatch(String),

    #[error("construction failed verification: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
