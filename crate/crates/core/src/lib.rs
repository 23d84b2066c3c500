//! Exact nullity of signed graphs.
//!
//! The crate computes rank and nullity of signed adjacency matrices with exact integer
//! arithmetic, implements nullity-preserving reductions (pendant-pair deletion,
//! special-path rewiring and contraction), recognizes the graphs of rank 2 and 3, and
//! runs exhaustive verification sweeps over small signed trees, connected graphs and
//! bicyclic graphs.

pub mod balance;
pub mod enumeration;
pub mod format;
pub mod graph;
pub mod matrix;
pub mod nullity;
pub mod recognizers;
pub mod reductions;

pub use balance::{
    cycle_sign, fundamental_cycles, is_balanced, switch, switching_equivalent, BalanceWitness,
};
pub use enumeration::{SweepConfig, TheoremId, TheoremReport};
pub use format::{parse_graph, to_dot, to_graph_file, ParseError};
pub use graph::{Cycle, Edge, GraphError, Sign, SignedGraph, SwitchingFunction};
pub use matrix::IntMatrix;
pub use nullity::{
    cycle_nullity_formula, forest_nullity_formula, matching_number, nullity, rank, NullityError,
};
