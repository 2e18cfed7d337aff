use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: String },

    #[error("input is not full-dimensional: affine rank {rank} in dimension {dim}")]
    Degenerate { rank: isize, dim: usize },

    #[error("vector {0} is not primitive")]
    NotPrimitive(String),

    #[error("polytope has no lattice center of symmetry")]
    NotCentrallySymmetric,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource cap exceeded: {what} ({size} > {cap})")]
    ResourceCap { what: String, size: usize, cap: usize },

    /// A runtime certificate of a construction step failed. `equation` is the
    /// tag of the first violated inequality, e.g. `"Eq27"`.
    #[error("construction failed at {equation}: {detail}")]
    ConstructionFailure { equation: &'static str, detail: String },

    #[error("census pipelines disagree: {0}")]
    CensusDisagreement(String),
}

impl Error {
    pub fn construction(equation: &'static str, detail: impl Into<String>) -> Self {
        Error::ConstructionFailure { equation, detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
