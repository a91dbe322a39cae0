use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is trivial (needs at least two vertices and one edge)")]
    Trivial,

    #[error("flow network: {0}")]
    Flow(String),

    #[error("capacity overflow while building flow network")]
    CapacityOverflow,

    #[error("no finite cut separates source and sink")]
    NoFiniteCut,

    #[error("size guard exceeded: {what} is {actual}, limit {limit}")]
    Guard {
        what: &'static str,
        actual: String,
        limit: String,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
