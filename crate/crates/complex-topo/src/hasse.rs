use graph_core::{Digraph, WeightMap};

use crate::complex::RegularComplex;

/// Hasse diagram of `k` as a weighted digraph: vertex `i` is cell `i`, with
/// the cell's label carried over, and each cover pair becomes one arc from
/// face to coface. Weights are the stored cell weights.
///
/// Arcs step up one dimension, so the diagram is layered and acyclic before
/// any reversal.
pub fn hasse_diagram(k: &RegularComplex) -> (Digraph, WeightMap) {
    let labels = k.cells().iter().map(|c| c.label().to_string()).collect();
    let digraph = Digraph::with_labels(labels, k.covers())
        .expect("a valid complex has unique labels and simple cover arcs");
    (digraph, k.weight_map())
}
