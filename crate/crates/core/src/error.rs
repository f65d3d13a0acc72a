use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid colour token {0:?}")]
    InvalidColour(String),

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("permutation on {found} points applied to an object of size {expected}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("profile mismatch at position {position}: expected {expected}, found {found}")]
    ProfileMismatch {
        position: usize,
        expected: String,
        found: String,
    },

    #[error("expected {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("edge-only tree cannot replace vertex {vertex} with profile {profile}")]
    EdgeAtNonUnary { vertex: u64, profile: String },

    #[error("profile {0} is outside the stored support")]
    OutsideSupport(String),

    #[error("unknown element {element:?} in component {profile}")]
    UnknownElement { profile: String, element: String },

    #[error("materialising {what} needs {needed} entries, above the limit {limit}")]
    BoundExceeded {
        what: String,
        needed: u128,
        limit: u128,
    },

    #[error("{what} failed verification: {detail}")]
    VerificationFailed { what: String, detail: String },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }
}
