use thiserror::Error;

/// Crate-wide error type. Query-style negatives (a weight that is not
/// strongly linked, a filtration that does not exist) are ordinary return
/// values, not errors; these variants are reserved for contract violations
/// and honest "cannot know inside this truncation" signals.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got} ({context})")]
    Dimension {
        expected: usize,
        got: usize,
        context: String,
    },

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("not a finite-type Cartan matrix: root closure exceeded the safety bound ({0})")]
    FiniteType(String),

    #[error("not a positive root: {0}")]
    InvalidRoot(String),

    #[error("weight difference is not in the root lattice: {0}")]
    NonIntegral(String),

    #[error("radical weight is not dominant integral: {0}")]
    InvalidRadical(String),

    #[error("functional is not valid for this algebra: {0}")]
    InvalidFunctional(String),

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("computation left the truncation window: {0}")]
    Truncation(String),

    #[error("radical action closure is inconsistent: {0}")]
    InconsistentAction(String),

    #[error("tensor with nonzero radical twist on a factor is unsupported: {0}")]
    UnsupportedTensor(String),

    #[error("operation requires a rank-{expected} root system, got rank {got}")]
    UnsupportedRank { expected: usize, got: usize },

    #[error("nilpotency bound {0} exceeded; the module is not J2-nilpotent within the window")]
    NotNilpotentWithinBound(usize),

    #[error("singular block (the dot orbit is a single point): {0}")]
    SingularBlockUnsupported(String),

    #[error("block has no two-step tensor realization of its antidominant projective: {0}")]
    UnsupportedBlock(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
