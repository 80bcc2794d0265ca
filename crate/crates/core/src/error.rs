use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("control and target coincide on wire {0}")]
    SameControlTarget(usize),

    #[error("gate {position} is not a CNOT")]
    NonCnotGate { position: usize },

    #[error("gate {position} ({gate}) is not allowed here: {context}")]
    UnsupportedGate {
        position: usize,
        gate: String,
        context: &'static str,
    },

    #[error("matrix is singular: no pivot in column {column}")]
    Singular { column: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("terminal set is empty")]
    EmptyTerminals,

    #[error("node {node} is not in the graph ({nodes} nodes)")]
    UnknownNode { node: usize, nodes: usize },

    #[error("instance too large for exact search: {nodes} nodes, {terminals} terminals")]
    InstanceTooLarge { nodes: usize, terminals: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error("unknown architecture `{0}`")]
    UnknownArchitecture(String),

    #[error("gave up after {attempts} attempts: {what}")]
    RetryCap { attempts: usize, what: &'static str },

    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("{n} qubits exceeds the dense simulation cap of {cap}")]
    TooManyQubits { n: usize, cap: usize },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}
