use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is disconnected")]
    GraphDisconnected,

    #[error("threshold r = {r} exceeds minimum degree {min_degree}")]
    ThresholdExceedsMinDegree { r: u32, min_degree: usize },

    #[error("node {node} out of range for a graph on {n} nodes")]
    InvalidNode { node: usize, n: usize },

    #[error("configuration has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{what}: {value} exceeds cap {cap}")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },

    #[error("node set must be non-empty")]
    EmptySet,

    #[error("no {role} of size at most {size_cap}")]
    NoSolution { role: String, size_cap: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("invalid graph file: {0}")]
    InvalidGraphFile(String),
}

impl Error {
    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }
}
