use thiserror::Error;

/// Errors raised while reading graphs, ideals and configuration documents.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed input: {detail}")]
    Malformed { line: usize, detail: String },
    #[error("line {line}: endpoint {vertex} outside 1..={n}")]
    EndpointOutOfRange { line: usize, vertex: i64, n: usize },
    #[error("line {line}: duplicate edge {{{u},{v}}}")]
    DuplicateEdge { line: usize, u: u32, v: u32 },
    #[error("line {line}: loop at vertex {v}")]
    Loop { line: usize, v: u32 },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("graph has {n} vertices; at most {max} are supported")]
    TooManyVertices { n: usize, max: usize },
    #[error("bad monomial {text:?}: {detail}")]
    Monomial { text: String, detail: String },
    #[error("bad field spec {0:?}: expected gf2, q or gfp:<prime>")]
    Field(String),
    #[error("json: {0}")]
    Json(String),
}

/// Errors from the algebraic and combinatorial engines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// A configurable size guard refused the computation.
    #[error("size cap `{cap}` exceeded: {actual} > {limit}")]
    CapExceeded { cap: &'static str, limit: u64, actual: u64 },
    #[error("generator {0} is not squarefree")]
    NotSquarefree(String),
    #[error("closed neighborhoods of {x} and {y} intersect at {witness}")]
    NeighborhoodsIntersect { x: u32, y: u32, witness: u32 },
    #[error("vertex {0} is not a vertex of the graph")]
    NoSuchVertex(u32),
    #[error("graph has isolated vertex {0}; the edge ideal does not determine it")]
    IsolatedVertex(u32),
    #[error("stretched vertex {vertex} is both a lower endpoint of {lower} and an upper endpoint of {upper} at t={t}")]
    StretchCollision { t: u32, vertex: u32, lower: u32, upper: u32 },
    #[error("splitting map is invalid: {0}")]
    InvalidSplitting(String),
    #[error("labeling is not a permutation of 1..={0}")]
    BadLabeling(usize),
    #[error("{0} must be at least 1")]
    NonPositive(&'static str),
    #[error("ambient ring has {ambient} variables but generator uses x{index}")]
    VariableOutOfRange { ambient: usize, index: u32 },
    #[error("io: {0}")]
    Io(String),
    /// An internal consistency check failed.
    #[error("invariant breach: {0}")]
    Invariant(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
