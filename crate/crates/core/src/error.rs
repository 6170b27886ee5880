use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("curve has no components")]
    EmptyGraph,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    VertexIndex(usize),
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("curve must be connected")]
    Disconnected,
    #[error("subcurve {0:?} is empty or does not induce a connected subgraph")]
    DisconnectedSubcurve(Vec<usize>),
    #[error("unknown edge index {0}")]
    UnknownEdge(usize),
    #[error("edge index {0} listed twice in node set")]
    RepeatedEdge(usize),
    #[error("expected a vector of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("total degree must be {expected}, got {found}")]
    TotalDegree { expected: i64, found: i64 },
    #[error("component {component} must have total degree {expected}, got {found}")]
    ComponentDegree { component: usize, expected: i64, found: i64 },
    #[error("total degree must be at least 1, got {0}")]
    DegreeTooSmall(i64),
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(i64),
    #[error("invalid vine parameters: {0}")]
    InvalidVine(String),
    #[error("expected a curve with exactly two components, got {0}")]
    NotTwoComponent(usize),
    #[error("multidegree {0:?} is not a strictly semistable endpoint")]
    NotStrictlySemistable(Vec<i64>),
    #[error("{0}")]
    NotCovered(String),
    #[error("{what} cap exceeded: limit {limit}, required {required}")]
    CapExceeded { what: &'static str, limit: u64, required: u64 },
    #[error("integer overflow while {0}")]
    Overflow(&'static str),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
