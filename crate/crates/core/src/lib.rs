//! Partitioning graphs into vertex-disjoint stars `K_{1,s}`.
//!
//! Polynomial solvers for unit interval, interval (`s = 2`), bipartite
//! permutation, cograph and split (`s = 2`) graphs, an exhaustive oracle for
//! everything else, a certificate verifier, and instance generators.

pub mod bipperm;
pub mod cograph;
pub mod error;
pub mod generators;
pub mod graph;
pub mod interval;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod split;

pub use error::{Error, Result};
pub use graph::{
    feasibility_precheck, verify_partition, BipartiteGraph, Block, Feasibility, Graph, StarPartition, Vertex, Violation,
};
pub use oracle::{oracle_partition, OracleAnswer, DEFAULT_BUDGET};
