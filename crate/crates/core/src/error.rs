use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("nodes must be distinct, got {0} twice")]
    SameNode(usize),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("resource guard: {what} requires {requested}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("invalid initial state: {0}")]
    InvalidInit(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("correlation matrix is not two-valued (max within-class spread {spread:e})")]
    NotTwoValued { spread: f64 },

    #[error("ground-state manifold is empty")]
    EmptyManifold,

    #[error("graph family mismatch: {0}")]
    FamilyMismatch(String),

    #[error("fixture {name} failed checksum verification")]
    Checksum { name: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
