use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use thiserror::Error;

use crate::matching::Matching;
use crate::order::VertexOrder;
use crate::weights::WeightMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex '{label}'")]
    SelfLoop { label: String },
    #[error("duplicate arc {tail} -> {head}")]
    DuplicateArc { tail: String, head: String },
    #[error("duplicate vertex label '{label}'")]
    DuplicateLabel { label: String },
    #[error("vertex label '{label}' is empty or contains whitespace")]
    BadLabel { label: String },
    #[error("arc endpoint {v} out of range (n = {n})")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("arc set is not a feedback Morse matching")]
    NotFeedbackMorse,
}

/// Directed graph on dense vertex ids `0..n`, each carrying a string label.
///
/// No self-loops and no duplicate arcs; antiparallel pairs are allowed.
/// Arcs and adjacency lists are kept sorted ascending so that every
/// iteration order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    arcs: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl Digraph {
    /// Digraph with labels "0", "1", ... for its vertices.
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::with_labels((0..n).map(|v| v.to_string()).collect(), arcs)
    }

    pub fn with_labels(labels: Vec<String>, arcs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (v, label) in labels.iter().enumerate() {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(GraphError::BadLabel { label: label.clone() });
            }
            if index.insert(label.clone(), v).is_some() {
                return Err(GraphError::DuplicateLabel { label: label.clone() });
            }
        }
        let mut sorted: Vec<(usize, usize)> = arcs.to_vec();
        sorted.sort_unstable();
        for &(u, v) in &sorted {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { v: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { label: labels[u].clone() });
            }
        }
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateArc {
                tail: labels[w[0].0].clone(),
                head: labels[w[0].1].clone(),
            });
        }
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in &sorted {
            out[u].push(v);
            inn[v].push(u);
        }
        for l in inn.iter_mut() {
            l.sort_unstable();
        }
        Ok(Digraph { labels, index, arcs: sorted, out, inn })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs as (tail, head), sorted ascending.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.binary_search(&(u, v)).is_ok()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Arcs (u,v) whose head comes before its tail in `pi`.
    ///
    /// The backward set of an order is its induced matching candidate: the
    /// order is a feedback Morse order exactly when this set is a matching.
    pub fn backward_edges(&self, pi: &VertexOrder) -> Vec<(usize, usize)> {
        assert_eq!(pi.len(), self.n(), "order must be a permutation of the vertex set");
        self.arcs
            .iter()
            .copied()
            .filter(|&(u, v)| pi.position(v) < pi.position(u))
            .collect()
    }

    /// True iff no two arcs of `arcs` share an endpoint (head or tail).
    pub fn is_matching(&self, arcs: &[(usize, usize)]) -> bool {
        for &(u, v) in arcs {
            assert!(self.has_arc(u, v), "arc ({u},{v}) not in the digraph");
        }
        let mut used = vec![false; self.n()];
        for &(u, v) in arcs {
            if used[u] || used[v] {
                return false;
            }
            used[u] = true;
            used[v] = true;
        }
        true
    }

    /// Digraph with every arc of `m` reversed. A reversed arc that coincides
    /// with an existing arc is merged into it; acyclicity and the objective
    /// do not depend on arc multiplicity.
    pub fn reverse_matched(&self, m: &Matching) -> Digraph {
        for &(u, v) in m.arcs() {
            assert!(self.has_arc(u, v), "matched arc ({u},{v}) not in the digraph");
        }
        let mut arcs: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .copied()
            .filter(|a| !m.contains(*a))
            .chain(m.arcs().iter().map(|&(u, v)| (v, u)))
            .collect();
        arcs.sort_unstable();
        arcs.dedup();
        Self::with_labels(self.labels.clone(), &arcs).expect("reversal preserves validity")
    }

    /// Lexicographically smallest topological order, or None on a cycle.
    pub fn topological_order(&self) -> Option<VertexOrder> {
        let n = self.n();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.inn[v].len()).collect();
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut seq = Vec::with_capacity(n);
        while let Some(Reverse(v)) = heap.pop() {
            seq.push(v);
            for &w in &self.out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    heap.push(Reverse(w));
                }
            }
        }
        if seq.len() == n {
            Some(VertexOrder::new(seq).expect("topological sort yields a permutation"))
        } else {
            None
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// True iff `arcs` is a matching whose reversal leaves the digraph acyclic.
    pub fn is_feedback_morse_matching(&self, arcs: &[(usize, usize)]) -> bool {
        if !self.is_matching(arcs) {
            return false;
        }
        let m = Matching::new(arcs.to_vec()).expect("checked above");
        self.reverse_matched(&m).is_acyclic()
    }

    /// An order whose backward set is exactly `m`: any topological order of
    /// the reversed digraph works. Errors when `m` is not a feedback Morse
    /// matching (there is no such order then).
    pub fn order_of_matching(&self, m: &Matching) -> Result<VertexOrder, GraphError> {
        if !self.is_matching(m.arcs()) {
            return Err(GraphError::NotFeedbackMorse);
        }
        self.reverse_matched(m)
            .topological_order()
            .ok_or(GraphError::NotFeedbackMorse)
    }

    /// Total weight of vertices not covered by `m`.
    pub fn objective(&self, w: &WeightMap, m: &Matching) -> f64 {
        assert_eq!(w.len(), self.n(), "weight map must cover the vertex set");
        for &(u, v) in m.arcs() {
            assert!(self.has_arc(u, v), "matched arc ({u},{v}) not in the digraph");
        }
        (0..self.n()).filter(|&v| !m.covers(v)).map(|v| w.get(v)).sum()
    }

    /// Vertices not covered by `m`, ascending.
    pub fn unmatched_vertices(&self, m: &Matching) -> Vec<usize> {
        (0..self.n()).filter(|&v| !m.covers(v)).collect()
    }
}
