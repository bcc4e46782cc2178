//! Balanced st-connectivity on directed graphs.
//!
//! A walk in the underlying undirected graph is *balanced* when it crosses
//! as many edges along their direction as against it (edges present in both
//! directions count as neither). This crate decides whether a balanced walk
//! joins two vertices, builds one of length `O(n³)` when it does, shortens
//! arbitrary balanced walks to that length, and checks everything against a
//! brute-force search on small graphs.
//!
//! * [`graph`] - digraphs, the classified undirected view, walks.
//! * [`format`] - instance and walk text formats.
//! * [`diophantine`] - bounded solutions of `Σ m_i c_i = k`.
//! * [`solver`] - the decision procedure.
//! * [`witness`] - witness construction, rebalancing, verification.
//! * [`oracle`] - exhaustive product-graph BFS.
//! * [`instances`] - generators.
//! * [`batch`] - data-parallel sweeps.

pub mod batch;
pub mod diophantine;
pub mod format;
pub mod graph;
pub mod instances;
pub mod oracle;
pub mod solver;
pub mod witness;

pub use graph::{ClassifiedView, DirectedGraph, EdgeClass, Instance, Vertex, Walk};
pub use solver::{decide_balanced, NoReason, Verdict};
pub use witness::{build_witness, rebalance_existing, verify_walk, VerifyReport};
