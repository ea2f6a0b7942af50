use crate::matching::Matching;
use crate::order::VertexOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
}

/// Outcome of a solve. When optimal, `matching` is exactly the backward set
/// of `order`, `unmatched` lists the vertices it leaves uncovered, and
/// `value` is their total weight.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub status: Status,
    pub value: Option<f64>,
    pub order: Option<VertexOrder>,
    pub matching: Option<Matching>,
    pub unmatched: Option<Vec<usize>>,
}

impl SolveResult {
    pub fn optimal(value: f64, order: VertexOrder, matching: Matching, unmatched: Vec<usize>) -> Self {
        SolveResult {
            status: Status::Optimal,
            value: Some(value),
            order: Some(order),
            matching: Some(matching),
            unmatched: Some(unmatched),
        }
    }

    pub fn infeasible() -> Self {
        SolveResult {
            status: Status::Infeasible,
            value: None,
            order: None,
            matching: None,
            unmatched: None,
        }
    }
}
