use graph_core::Digraph;
use thiserror::Error;

/// A tree decomposition: bags of vertex ids plus tree edges between bags.
///
/// Bags are kept sorted and deduplicated. Zero bags is the decomposition of
/// the empty graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(mut bags: Vec<Vec<usize>>, mut edges: Vec<(usize, usize)>) -> Self {
        for bag in &mut bags {
            bag.sort_unstable();
            bag.dedup();
        }
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        TreeDecomposition { bags, edges }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Largest bag size minus one; -1 when there are no bags.
    pub fn width(&self) -> isize {
        self.bags.iter().map(|b| b.len() as isize - 1).max().unwrap_or(-1)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TdViolation {
    #[error("bag {bag} contains vertex {vertex}, outside the graph")]
    BagVertexOutOfRange { bag: usize, vertex: usize },
    #[error("tree edge ({a}, {b}) references a missing bag")]
    EdgeOutOfRange { a: usize, b: usize },
    #[error("the bags do not form a tree")]
    NotATree,
    #[error("vertex {vertex} appears in no bag")]
    VertexNotCovered { vertex: usize },
    #[error("arc ({tail}, {head}) has no bag containing both endpoints")]
    ArcNotCovered { tail: usize, head: usize },
    #[error("bags containing vertex {vertex} are not connected in the tree")]
    OccurrenceDisconnected { vertex: usize },
}

/// Checks the tree decomposition axioms against `g` and reports the first
/// violation: structure, then vertex coverage, arc coverage, and occurrence
/// connectivity, each scanned in ascending order.
pub fn validate_td(g: &Digraph, td: &TreeDecomposition) -> Result<(), TdViolation> {
    let k = td.bags.len();
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() {
                return Err(TdViolation::BagVertexOutOfRange { bag: i, vertex: v });
            }
        }
    }
    for &(a, b) in &td.edges {
        if a >= k || b >= k {
            return Err(TdViolation::EdgeOutOfRange { a, b });
        }
    }
    if k == 0 {
        if g.n() > 0 {
            return Err(TdViolation::VertexNotCovered { vertex: 0 });
        }
        return Ok(());
    }
    if td.edges.iter().any(|&(a, b)| a == b) || td.edges.len() != k - 1 {
        return Err(TdViolation::NotATree);
    }
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &td.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; k];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                reached += 1;
                stack.push(j);
            }
        }
    }
    if reached != k {
        return Err(TdViolation::NotATree);
    }

    let mut in_some_bag = vec![false; g.n()];
    for bag in &td.bags {
        for &v in bag {
            in_some_bag[v] = true;
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| !in_some_bag[v]) {
        return Err(TdViolation::VertexNotCovered { vertex: v });
    }

    for &(u, v) in g.arcs() {
        let covered = td
            .bags
            .iter()
            .any(|bag| bag.binary_search(&u).is_ok() && bag.binary_search(&v).is_ok());
        if !covered {
            return Err(TdViolation::ArcNotCovered { tail: u, head: v });
        }
    }

    for v in 0..g.n() {
        let holders: Vec<usize> = (0..k)
            .filter(|&i| td.bags[i].binary_search(&v).is_ok())
            .collect();
        let mut seen = vec![false; k];
        let mut stack = vec![holders[0]];
        seen[holders[0]] = true;
        let mut reached = 1;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] && td.bags[j].binary_search(&v).is_ok() {
                    seen[j] = true;
                    reached += 1;
                    stack.push(j);
                }
            }
        }
        if reached != holders.len() {
            return Err(TdViolation::OccurrenceDisconnected { vertex: v });
        }
    }
    Ok(())
}
