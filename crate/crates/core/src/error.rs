use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop at node {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("nonpositive weight {weight} on edge ({tail}, {head})")]
    NonPositiveWeight { tail: usize, head: usize, weight: f64 },

    #[error("node {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("graph has no edges")]
    NoEdges,

    #[error("graph must have at least one node")]
    NoNodes,

    #[error("operation requires an undirected graph: {0}")]
    RequiresUndirected(&'static str),

    #[error("operation requires a directed graph: {0}")]
    RequiresDirected(&'static str),

    #[error("vector length {got} does not match node count {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("entry {index} is {value}; expected a finite nonnegative value")]
    InvalidEntry { index: usize, value: f64 },

    #[error("irreducibility required: graph is not {0}")]
    NotIrreducible(&'static str),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        best: Vec<f64>,
    },

    #[error("alpha {alpha} exceeds 1/spectral-radius ({limit})")]
    AlphaOutOfRange { alpha: f64, limit: f64 },

    #[error("series overflowed to a non-finite value; try a smaller beta")]
    NonFinite,

    #[error("walk count overflow")]
    Overflow,

    #[error("exact walk counts need integer weights")]
    NonIntegerWeights,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph does not violate the condition: {0}")]
    NotViolating(String),

    /// A check backed by a theorem came out false. This always means a bug
    /// (or a numerical breakdown), never a mathematical finding.
    #[error("internal error: theorem-guaranteed check failed: {0}")]
    TheoremViolation(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
