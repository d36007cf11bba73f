use thiserror::Error;

/// Errors raised by the exact geometry and lattice routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a sublattice: generator {0} is not an integer combination of the ambient basis")]
    NotASublattice(usize),

    #[error("group has free rank {0}; p-rank is only defined for finite groups")]
    NotFinite(usize),

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("lattice of rank {rank} is not full rank in ambient rank {ambient}")]
    NotFullRank { rank: usize, ambient: usize },

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("singular generator at index {0}")]
    SingularGenerator(usize),

    #[error("completeness check exceeded its subdivision depth cap of {0}")]
    DepthCapExceeded(usize),

    #[error("hypothesis violated ({case}): {reason}")]
    HypothesisViolated { case: String, reason: String },

    #[error("cone is not smooth with respect to the lattice")]
    NotSmooth,

    #[error("cone is not top-dimensional")]
    NotTopDimensional,

    #[error("sublattice does not have finite index: {0}")]
    NotFiniteIndex(String),

    #[error("invalid rank: {0}")]
    InvalidRank(String),

    #[error("invalid level: {0}")]
    InvalidLevel(String),

    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),

    #[error("unsupported chart: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
