//! Dynamic program for feedback Morse orders over a nice tree decomposition.
//!
//! A table entry keys a total order on the bag plus the set of bag vertices
//! already matched, and stores the minimum unmatched weight among processed
//! vertices strictly inside the subtree. Missing entries are the infeasible
//! sentinel. The realized state count per node never exceeds b!·2^b for bag
//! size b, which the solver asserts on every run.

pub mod check;
mod solve;
mod state;
mod stats;
mod steps;

pub use solve::{
    solve_fmo, solve_fmo_full, solve_fmo_with_cap, SolveError, Solved, DEFAULT_BAG_CAP,
    ENCODING_LIMIT,
};
pub use state::BagState;
pub use stats::{NodeStats, StateStats};
pub use steps::{
    bag_internal_forced_set, forget_vertex_step, introduce_edge_step, introduce_vertex_step,
    join_step, leaf_init, DPTable, ForcedSet,
};
