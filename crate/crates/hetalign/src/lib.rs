//! Local alignment of node-colored (heterogeneous) networks.
//!
//! The pipeline has two phases. Phase one merges two colored graphs and a
//! list of similarity-matched node pairs into a single weighted *alignment
//! graph*: every seed pair becomes a node, and edges between pairs are
//! classified as match, mismatch, or gap (each homogeneous or heterogeneous
//! by endpoint color) and weighted by a six-class schema. Phase two extracts
//! conserved communities from the alignment graph with Markov clustering.
//!
//! The crate also ships a seeded Erdős–Rényi generator for synthetic colored
//! networks and a benchmark harness that measures how alignment-graph
//! construction scales with worker count.

pub mod align;
pub mod bench;
pub mod cli;
pub mod distance;
pub mod graph;
pub mod mcl;

mod parallel;
