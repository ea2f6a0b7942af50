use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("arcs ({}, {}) and ({}, {}) share an endpoint", .0.0, .0.1, .1.0, .1.1)]
    SharedEndpoint((usize, usize), (usize, usize)),
}

/// Set of arcs with pairwise-disjoint endpoints, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    arcs: Vec<(usize, usize)>,
    covered: Vec<usize>,
}

impl Matching {
    pub fn new(mut arcs: Vec<(usize, usize)>) -> Result<Self, MatchingError> {
        arcs.sort_unstable();
        arcs.dedup();
        let mut covered: Vec<(usize, (usize, usize))> = Vec::with_capacity(2 * arcs.len());
        for &(u, v) in &arcs {
            covered.push((u, (u, v)));
            covered.push((v, (u, v)));
        }
        covered.sort_unstable();
        if let Some(w) = covered.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(MatchingError::SharedEndpoint(w[0].1, w[1].1));
        }
        let covered = covered.into_iter().map(|(v, _)| v).collect();
        Ok(Matching { arcs, covered })
    }

    pub fn empty() -> Self {
        Matching::default()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, arc: (usize, usize)) -> bool {
        self.arcs.binary_search(&arc).is_ok()
    }

    /// True iff `v` is an endpoint of some matched arc.
    pub fn covers(&self, v: usize) -> bool {
        self.covered.binary_search(&v).is_ok()
    }

    /// Matched vertices, ascending.
    pub fn covered_vertices(&self) -> &[usize] {
        &self.covered
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_shared_endpoints() {
        assert!(Matching::new(vec![(0, 1), (1, 2)]).is_err());
        assert!(Matching::new(vec![(0, 1), (2, 1)]).is_err());
        let m = Matching::new(vec![(2, 3), (0, 1)]).unwrap();
        assert_eq!(m.arcs(), &[(0, 1), (2, 3)]);
        assert_eq!(m.covered_vertices(), &[0, 1, 2, 3]);
        assert!(m.covers(2));
        assert!(!m.covers(4));
    }
}
