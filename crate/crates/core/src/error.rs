use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("total edge weight exceeds the admissible bound {limit}")]
    WeightOverflow { limit: u128 },
    #[error("a cut side must be a nonempty proper subset of the vertex set")]
    TrivialCut,
    #[error("classes do not partition the vertex set")]
    NotAPartition,
    #[error("edge ({0}, {1}) is not in the graph")]
    EdgeNotFound(VertexId, VertexId),
    #[error("source and sink coincide")]
    SameEndpoints,
    #[error("terminal sets must be nonempty and disjoint")]
    OverlappingTerminals,
    #[error("need at least {need} terminals, got {got}")]
    TooFewTerminals { need: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("instance too large for exhaustive enumeration ({n} > {limit} vertices)")]
    TooLarge { n: usize, limit: usize },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("expander decomposition exceeded its budget: inter-cluster weight {weight} > {budget}")]
    DecompositionBudget { weight: u128, budget: u128 },
    #[error("expander refinement hit its cap of {0} splits")]
    RefinementCap(usize),
    #[error("sparsification failed to halve the terminal set ({before} -> {after})")]
    SparsificationFailed { before: usize, after: usize },
    #[error("internal contract violated: {0}")]
    ContractViolation(String),
}

impl Error {
    /// True for failures caused by an internal invariant rather than by input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::ContractViolation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
