use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("arc capacity is zero, transmission is impossible")]
    InfeasibleCapacity,

    #[error("unknown arc id {0}")]
    UnknownArc(usize),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("invalid capacity distribution on arc {arc}: {reason}")]
    InvalidDistribution { arc: usize, reason: String },

    #[error("arc {0} has no capacity distribution")]
    MissingDistribution(usize),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no minimal paths supplied")]
    EmptyCatalog,

    #[error("{what} exceeds the configured limit of {limit}")]
    ResourceLimit { what: String, limit: u64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("instance generation failed: {0}")]
    Generation(String),

    #[error("invalid data: {0}")]
    Data(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("correctness check failed: {0}")]
    Correctness(String),
}

impl Error {
    pub fn resource(what: impl Into<String>, limit: u64) -> Self {
        Error::ResourceLimit { what: what.into(), limit }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
