//! Independent brute-force solvers and the greedy collapse checker.
//!
//! These take the long way around on purpose: no shared machinery with the
//! dynamic program, no pruning beyond the plain feasibility filters, so a
//! disagreement always points at the thing being validated. Every oracle is
//! capped and fails fast when an instance is beyond desk scale.

mod erase;
mod matchings;
mod orders;
mod result;

pub use erase::{
    brute_force_erasibility, brute_force_erasibility_capped, greedy_erase, greedy_erase_with,
    Collapse, DEFAULT_ERASE_CAP,
};
pub use matchings::{brute_force_matchings, brute_force_matchings_capped, DEFAULT_MATCHING_CAP};
pub use orders::{brute_force_orders, brute_force_orders_capped, DEFAULT_ORDER_CAP};
pub use result::{OracleError, OracleResult};
