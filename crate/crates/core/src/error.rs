use thiserror::Error;

use crate::network::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed network document: {0}")]
    Malformed(String),

    #[error("invalid network: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),

    #[error("cannot parse expression: {0}")]
    Parse(String),

    #[error("constant term of the series is not 1")]
    ConstantTermNotOne,

    #[error("division by zero")]
    DivisionByZero,

    #[error("variable {0} has no assigned value")]
    UnboundVariable(String),

    #[error("edge {0} has a non-integral constant weight")]
    NonIntegralWeight(String),

    #[error("network has a cycle of weight degree 0; its walk series do not truncate")]
    DegreeZeroCycle,

    #[error("boundary position {0} is out of range")]
    BadPosition(usize),

    #[error("boundary vertex {0} is not a source")]
    NotASource(usize),

    #[error("network is not perfectly oriented (vertex {0})")]
    NotPerfectlyOriented(String),

    #[error("operation needs a rotation system but the network is non-planar")]
    MissingRotation,

    #[error("bad column set: {0}")]
    BadColumnSet(String),

    #[error("vertex {0} has degree 2 and carries a self-loop")]
    Degree2SelfLoop(String),

    #[error("network must be pruned and degree-2 suppressed first: {0}")]
    NotReduced(String),

    #[error("{edges} edges exceeds the brute-force limit of {limit}")]
    TooLarge { edges: usize, limit: usize },

    #[error("weight for edge {0} must be a positive rational")]
    NonPositiveWeight(String),

    #[error("no weight given for edge {0}")]
    MissingEdgeValue(String),

    #[error("walk system already forms a flow; the involution is undefined there")]
    IsAlreadyFlow,

    #[error("walk system is malformed: {0}")]
    BadWalkSystem(String),
}
