use thiserror::Error;

/// Errors raised by the certifier and its supporting machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list parse error on line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("pattern has {got} vertices, the limit is {limit}")]
    TooManyVertices { got: usize, limit: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point lies on the graphon boundary x = 1/2 (coordinate {0})")]
    Boundary(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
