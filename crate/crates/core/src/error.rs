use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph has {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),
    #[error("failed to parse JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown point: {0}")]
    UnknownPoint(String),
    #[error("empty vertex set")]
    EmptySet,
    #[error("subcurve is not connected")]
    NotConnected,
    #[error("enumeration over {vertices} vertices exceeds the limit of {limit}")]
    LimitExceeded { vertices: usize, limit: usize },
    #[error("more than one separating node splits the genus in half")]
    MultipleHalfNodes,
    #[error("objects belong to different host graphs")]
    HostMismatch,
    #[error("no tail relation applies to this pair")]
    NoRelation,
    #[error("vector has {got} entries, graph has {expected} vertices")]
    IndexMismatch { expected: usize, got: usize },
    #[error("total degrees differ ({0} vs {1})")]
    TotalDegreeMismatch(i64, i64),
    #[error("arithmetic genus {0} is below 2")]
    GenusTooSmall(i64),
    #[error("graph is not stable")]
    NotStable,
    #[error("graph is not quasistable")]
    NotQuasistable,
    #[error("multidegree is not semibalanced")]
    NotSemibalanced,
    #[error("graph is not 1-general")]
    NotOneGeneral,
    #[error("graph does not have exactly two vertices")]
    NotTwoComponent,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid corpus spec: {0}")]
    Spec(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
