//! Tree decompositions for the feedback Morse solver.
//!
//! Decompositions are taken over the underlying undirected graph of a
//! [`graph_core::Digraph`]. The crate provides elimination heuristics, the
//! conversion to nice form with explicit edge-introduction nodes, the
//! structural discipline the dynamic program relies on, and the PACE text
//! format for exchanging decompositions.

mod heuristic;
mod nice;
mod pace;
mod td;

pub use heuristic::{heuristic_td, Strategy};
pub use nice::{
    naive_path_decomposition, processed_subgraph, to_nice, validate_discipline,
    DisciplineViolation, NiceNode, NiceTreeDecomposition, NodeKind,
};
pub use pace::{read_td_pace, write_td_pace, PaceError};
pub use td::{validate_td, TdViolation, TreeDecomposition};
