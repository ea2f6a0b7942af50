use graph_core::{Matching, VertexOrder};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} count {size} exceeds the oracle cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
}

/// Outcome of one exhaustive enumeration. `value` is `None` when nothing in
/// the enumerated space qualifies (no feasible order or matching, no
/// erasing set within the budget); otherwise the witness fields that make
/// sense for the oracle at hand are filled in and achieve the value, which
/// is the exact optimum. `optimal_count` counts the witnesses tied at the
/// optimum; reported witnesses are the lexicographically smallest ones.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub value: Option<f64>,
    pub order: Option<VertexOrder>,
    pub matching: Option<Matching>,
    pub triangles: Option<Vec<usize>>,
    pub optimal_count: u64,
}

impl OracleResult {
    pub(crate) fn nothing() -> Self {
        OracleResult {
            value: None,
            order: None,
            matching: None,
            triangles: None,
            optimal_count: 0,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.value.is_some()
    }
}
