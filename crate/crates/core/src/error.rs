use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("self-loop on node `{0}`")]
    SelfLoop(String),
    #[error("negative capacity on edge {0}")]
    NegativeCapacity(usize),
    #[error("edge length must be a positive integer (edge {0})")]
    NonPositiveLength(usize),
    #[error("invalid commodity {index}: {reason}")]
    InvalidCommodity { index: usize, reason: String },
    #[error("commodity index {0} out of range")]
    UnknownCommodity(usize),
    #[error("path enumeration for commodity {commodity} exceeded the cap of {cap} paths")]
    CapExceeded { commodity: usize, cap: usize },
    #[error("{count} shortest-path combinations exceed the cap of {cap}")]
    TooManyCombinations { count: String, cap: usize },
    #[error("path family for commodity {0} is truncated; exact solvers refuse partial families")]
    TruncatedFamily(usize),
    #[error("path family {family} does not belong to commodity {commodity}")]
    FamilyMismatch { family: usize, commodity: usize },
    #[error("commodity {0} has infinite demand where a finite one is required")]
    InfiniteDemand(usize),
    #[error("middlepoint `{0}` is an endpoint of a commodity")]
    WIsEndpoint(String),
    #[error("capacity on edge {0} is not integral")]
    NonIntegralCapacity(usize),
    #[error("operation requires a {0} network")]
    WrongOrientation(&'static str),
    #[error("instance too large for exact computation: {0}")]
    SizeGuard(String),
    #[error("nodes must be distinct: {0}")]
    NodesNotDistinct(String),
    #[error("invalid middlepoint configuration: {0}")]
    InvalidConfig(String),
    #[error("malformed linear program: {0}")]
    MalformedProgram(String),
    #[error("linear program is infeasible: {0}")]
    Infeasible(String),
    #[error("linear program is unbounded: {0}")]
    Unbounded(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid instance at {location}: {message}")]
    InvalidInstance { location: String, message: String },
    #[error("unknown builtin instance `{0}`")]
    UnknownInstance(String),
    #[error("no path between `{0}` and `{1}`")]
    NoPath(String, String),
}
