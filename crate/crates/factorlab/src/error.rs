use thiserror::Error;

/// Errors surfaced by the solver and audit APIs.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list parse error at line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("graphs on {0} vertices exceed the single-byte graph6 size limit (n < 63)")]
    UnsupportedSize(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph must be connected")]
    Disconnected,

    #[error("S and T must be disjoint")]
    OverlappingSets,

    #[error("graph must have at least {min} vertices")]
    TooSmall { min: usize },

    #[error("graph is not factor-critical")]
    NotFactorCritical,

    #[error("{u} and {v} are not adjacent")]
    NotAnEdge { u: usize, v: usize },

    #[error("invalid parity pair at vertex {vertex}: {reason}")]
    InvalidParityPair { vertex: usize, reason: String },

    #[error("invalid degree interval at vertex {vertex}: {reason}")]
    InvalidInterval { vertex: usize, reason: String },

    #[error("f({vertex}) = {value} must be a positive odd integer")]
    InvalidOddWeight { vertex: usize, value: i64 },

    #[error("invalid H assignment: {0}")]
    InvalidAssignment(String),

    #[error("{what} = {got} exceeds the guard limit {limit}")]
    GuardExceeded {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("empty vertex set not allowed here")]
    EmptySet,

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
