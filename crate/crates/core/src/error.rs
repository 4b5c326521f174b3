use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition of an operation was not met (shape mismatch, unverified
    /// input, missing group action, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A raw tensor would exceed the configured entry cap.
    #[error("size cap exceeded: degree-{degree} tensor over dim T = {dim_t}, dim V = {dim_v} has {entries} entries (cap {cap})")]
    SizeCap {
        degree: usize,
        dim_t: usize,
        dim_v: usize,
        entries: u128,
        cap: usize,
    },

    /// Parameters for an example constructor violate its hypotheses.
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    /// A cochain offered as a cocycle has a nonzero coboundary.
    #[error("not a cocycle: coboundary is nonzero at basis tuple {indices:?} (value {value})")]
    NotCocycle { indices: Vec<usize>, value: String },

    /// A central extension's defect does not lie in the image of the inclusion.
    #[error("exactness violation: {0}")]
    Exactness(String),

    #[error("deformation has no nonzero term, so it has no infinitesimal")]
    TrivialDeformation,

    /// A computed object failed a re-verification that the theory guarantees.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
