use thiserror::Error;

/// Errors raised by constructors, verifiers and the cycle engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex with exactly one child (degree two) is not allowed")]
    DegreeTwoVertex,
    #[error("shape has {expected} leaves but {got} leaf labels were given")]
    LeafCountMismatch { expected: usize, got: usize },
    #[error("tree has {expected} edges but {got} edge labels were given")]
    EdgeLabelCountMismatch { expected: usize, got: usize },
    #[error("edge index {index} out of range 1..={edges}")]
    EdgeIndexOutOfRange { index: usize, edges: usize },
    #[error("tree carries no edge labels")]
    MissingEdgeLabels,
    #[error("element is not homogeneous in differential degree")]
    NonHomogeneous,
    #[error("coproduct requires the trivial module")]
    NontrivialModule,
    #[error("t~ needs at least one leaf")]
    EmptyLeafList,
    #[error("a nonzero label repeats in tree {0}")]
    NotAdmissibleTree(String),
    #[error("sequence {0} is not generic")]
    NonGenericSequence(String),
    #[error("edge function denominator vanishes identically")]
    DegenerateDenominator,
    #[error("tree violates the double-decoration conditions: {0}")]
    ConditionsViolated(String),
    #[error("face cannot be solved for any variable: {0}")]
    UnsolvableFace(String),
    #[error("cycle meets the face improperly: {0}")]
    ImproperFace(String),
    #[error("sequence does not have the required shape: {0}")]
    ShapeViolation(String),
    #[error("invalid indices: {0}")]
    InvalidIndices(String),
    #[error("n + m must be even, got n={n}, m={m}")]
    ParityViolation { n: i64, m: i64 },
    #[error("word of degree {len} exceeds truncation {trunc}")]
    TruncationExceeded { len: usize, trunc: usize },
    #[error("path endpoints do not match: {0}")]
    EndpointMismatch(String),
    #[error("iterated integral diverges at an endpoint: {0}")]
    DivergentEndpoint(String),
    #[error("path passes within clearance of pole {0}")]
    PathTooCloseToPole(String),
    #[error("argument outside the series domain: {0}")]
    OutOfDomain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expression is not linear-fractional: {0}")]
    NotLinearFractional(String),
}

pub type Result<T> = std::result::Result<T, Error>;
