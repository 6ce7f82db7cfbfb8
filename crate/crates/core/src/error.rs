use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("malformed interval {id}: birth must be strictly smaller than death")]
    MalformedInterval { id: usize },

    #[error("star size s must be at least {min}, got {got}")]
    InvalidStarSize { min: usize, got: usize },

    #[error("open problem: no polynomial-time algorithm is known for s = {s} on interval graphs")]
    OpenProblem { s: usize },

    #[error("instance too large for the exact solver: n = {n} exceeds limit {limit} (Star Partition with s >= 3 is NP-hard on split graphs)")]
    InstanceTooLarge { n: usize, limit: usize },

    #[error("exact search exceeded its budget of {budget} node expansions")]
    BudgetExceeded { budget: u64 },

    #[error("edge {{{0}, {1}}} is not present")]
    MissingEdge(Vertex, Vertex),

    #[error("ordering does not cover the vertex sets: {0}")]
    OrderingMismatch(String),

    #[error("not a cograph")]
    NotCograph,

    #[error("not a split graph")]
    NotSplit,

    #[error("malformed X3C instance: {0}")]
    MalformedX3c(String),

    #[error("malformed 3DM instance: {0}")]
    MalformedTdm(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
