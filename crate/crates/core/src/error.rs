use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("uniformity must be at least {min}, got {r}")]
    Uniformity { r: usize, min: usize },
    #[error("edge {edge} has {len} vertices, expected {r}")]
    EdgeArity { edge: usize, len: usize, r: usize },
    #[error("edge {edge} repeats vertex {vertex}")]
    RepeatedVertex { edge: usize, vertex: usize },
    #[error("edge {edge} uses vertex {vertex}, but n = {n}")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("edge {edge} duplicates edge {first}")]
    DuplicateEdge { edge: usize, first: usize },
    #[error("vertex {vertex} is out of range for n = {n}")]
    UnknownVertex { vertex: usize, n: usize },

    #[error("labeling support mismatch: {0}")]
    SupportMismatch(String),
    #[error("{what} must be {requirement}, got {value}")]
    InvalidValue {
        what: &'static str,
        requirement: &'static str,
        value: f64,
    },
    #[error("vector entry at vertex {vertex} is zero but the vertex lies on an edge")]
    ZeroEntry { vertex: usize },
    #[error("labeling is inconsistent at vertex {vertex} (relative spread {spread:e})")]
    Inconsistent { vertex: usize, spread: f64 },
    #[error("vertex {vertex} has no incident edge")]
    IsolatedVertex { vertex: usize },

    #[error("{op} requires {requirement}")]
    Precondition {
        op: &'static str,
        requirement: &'static str,
    },
    #[error("{op}: {message}")]
    NoConvergence { op: &'static str, message: String },
    #[error("no certificate found: {0}")]
    NoCertificate(String),
    #[error("{what} exceeds the enumeration limit ({value} > {limit})")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },
}

impl Error {
    pub(crate) fn precondition(op: &'static str, requirement: &'static str) -> Self {
        Error::Precondition { op, requirement }
    }
}
