//! Graph algorithms for locally interval graphs and circular-arc representations.
//!
//! The crate is organized around a plain immutable [`graph::Graph`] and provides:
//!
//! * [`graph`] — the data model: balls with the half-integral radius edge rule,
//!   breadth-first distances, induced subgraphs, edge-list and graph6 formats.
//! * [`recognition`] — certifying recognizers: chordality, short holes, wheels,
//!   interval graphs, and the locally-chordal / locally-interval checkers.
//! * [`catalog`] — the forbidden-induced-subgraph catalogs (minimal non-interval
//!   graphs, the non-chordal obstructions for 3-acyclic circular-arc graphs, and
//!   the r = 4 extras), plus induced-embedding search.
//! * [`ca`] — maximal cliques, PQ-tree consecutive/circular ones, interval and
//!   circular-arc representation construction, verification, and the acyclicity
//!   (minimum arc cover) checker.
//! * [`cover`] — truncated construction and verification of the r-local cover.
//! * [`harness`] — corpus generation/ingestion and the cross-check drivers for
//!   the two main equivalence theorems, with counterexample shrinking.

pub mod ca;
pub mod canon;
pub mod catalog;
pub mod cert;
pub mod cover;
pub mod dot;
pub mod format;
pub mod graph;
pub mod harness;
pub mod pqtree;
pub mod recognition;

pub use graph::{Ball, DistanceProfile, Graph};
