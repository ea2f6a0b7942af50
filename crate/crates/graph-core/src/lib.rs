//! Digraphs with vertex weights, total vertex orders, matchings, and the
//! operations connecting them: backward edges of an order, reversal of
//! matched arcs, acyclicity, and the unmatched-weight objective.
//!
//! A matching M in a digraph D is a *feedback Morse matching* if reversing
//! every arc of M leaves D acyclic. A total vertex order whose backward
//! edges form a matching is a *feedback Morse order*; the two views are
//! equivalent and everything downstream is built on that equivalence.

mod digraph;
mod format;
mod matching;
mod order;
mod result;
mod weights;

pub use digraph::{Digraph, GraphError};
pub use format::{read_dg, write_dg, DgError};
pub use matching::{Matching, MatchingError};
pub use order::{OrderError, VertexOrder};
pub use result::{SolveResult, Status};
pub use weights::{WeightMap, WeightError};
