//! Exact parameterized solver for the weighted multiterminal cut problem.
//!
//! Given an undirected graph with positive integer edge weights, an ordered
//! list of terminals and a budget `k`, [`solver::solve`] either returns a
//! partition of the vertices with every terminal in its own part and at most
//! `k` weight crossing between parts, or reports that none exists. The search
//! tree has at most `O(1.84^k)` leaves.

pub mod baseline;
pub mod cli;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod isolation;
pub mod mincut;
pub mod reduce;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{MergeLog, Vertex, VertexSet, WeightedGraph, WorkGraph};
pub use mincut::Cut;
pub use reduce::Mode;
pub use solver::{solve, Partition, SolveOptions, SolveResult};
