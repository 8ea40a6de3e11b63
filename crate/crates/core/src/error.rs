//! Shared error type for graph construction, parsing, and the solvers.

use thiserror::Error;

/// Errors produced by graph construction, file parsing and solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A vertex id is not a valid index into the graph.
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: usize, n: usize },

    /// Self-loops are not representable.
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),

    /// The same edge/arc was given twice.
    #[error("duplicate edge {u} {v}")]
    DuplicateEdge { u: usize, v: usize },

    /// An addition collides with an existing edge/arc.
    #[error("edge {u} {v} is already present in the graph")]
    EdgeExists { u: usize, v: usize },

    /// The operation is only defined on undirected graphs.
    #[error("operation requires an undirected graph")]
    RequiresUndirected,

    /// A solution uses more additions than the instance allows.
    #[error("solution has {got} additions but the budget is {budget}")]
    BudgetExceeded { got: usize, budget: usize },

    /// The exhaustive solver refuses instances beyond its size guard.
    #[error(
        "instance too large for exhaustive search: {candidates} candidate additions \
         (limit {candidate_limit}), k = {k} (limit {k_limit})"
    )]
    ExhaustiveGuard {
        candidates: usize,
        candidate_limit: usize,
        k: usize,
        k_limit: usize,
    },

    /// The brute-force source-problem oracles refuse large inputs.
    #[error("input too large for the brute-force oracle: size {size} exceeds limit {limit}")]
    OracleGuard { size: usize, limit: usize },

    /// A cluster decomposition does not describe the given graph.
    #[error("cluster decomposition inconsistent with graph: {0}")]
    InvalidDecomposition(String),

    /// The instance kind contradicts the graph (e.g. directed kind on an
    /// undirected graph), or a solver got an instance kind it does not handle.
    #[error("instance kind mismatch: {0}")]
    KindMismatch(String),

    /// A precondition on an operation's arguments was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Malformed text input (edge lists, instance files, rationals).
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
