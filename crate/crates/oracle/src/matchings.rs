use graph_core::{Digraph, Matching, WeightMap};

use crate::result::{OracleError, OracleResult};

pub const DEFAULT_MATCHING_CAP: usize = 20;

pub fn brute_force_matchings(d: &Digraph, w: &WeightMap) -> Result<OracleResult, OracleError> {
    brute_force_matchings_capped(d, w, DEFAULT_MATCHING_CAP)
}

/// Backtracks over the arc list visiting every matching exactly once, keeps
/// those whose reversal leaves the digraph acyclic, and minimizes the
/// weight of the uncovered vertices. Ties prefer the lexicographically
/// smallest arc list, so the reported matching does not depend on the
/// enumeration order. Value comparisons are exact, as in the orders oracle.
pub fn brute_force_matchings_capped(
    d: &Digraph,
    w: &WeightMap,
    cap: usize,
) -> Result<OracleResult, OracleError> {
    let m = d.m();
    if m > cap {
        return Err(OracleError::CapExceeded { what: "arc", size: m, cap });
    }
    assert_eq!(w.len(), d.n(), "weight map must cover the vertex set");

    let mut search = Search {
        d,
        w,
        covered: vec![false; d.n()],
        in_m: vec![false; m],
        chosen: Vec::new(),
        best: None,
        count: 0,
    };
    search.go(0);
    let Search { best, count, .. } = search;

    let Some((value, picked)) = best else {
        return Ok(OracleResult::nothing());
    };
    let arcs: Vec<(usize, usize)> = picked.iter().map(|&i| d.arcs()[i]).collect();
    let matching = Matching::new(arcs).expect("the backtracking keeps endpoints disjoint");
    let order = d
        .order_of_matching(&matching)
        .expect("acyclicity was checked before the matching was kept");
    Ok(OracleResult {
        value: Some(value),
        order: Some(order),
        matching: Some(matching),
        triangles: None,
        optimal_count: count,
    })
}

struct Search<'a> {
    d: &'a Digraph,
    w: &'a WeightMap,
    covered: Vec<bool>,
    in_m: Vec<bool>,
    chosen: Vec<usize>,
    best: Option<(f64, Vec<usize>)>,
    count: u64,
}

impl Search<'_> {
    fn go(&mut self, i: usize) {
        if i == self.d.m() {
            self.evaluate();
            return;
        }
        self.go(i + 1);
        let (u, v) = self.d.arcs()[i];
        if !self.covered[u] && !self.covered[v] {
            self.covered[u] = true;
            self.covered[v] = true;
            self.in_m[i] = true;
            self.chosen.push(i);
            self.go(i + 1);
            self.chosen.pop();
            self.in_m[i] = false;
            self.covered[u] = false;
            self.covered[v] = false;
        }
    }

    fn evaluate(&mut self) {
        if !acyclic_after_reversal(self.d, &self.in_m) {
            return;
        }
        let value: f64 =
            (0..self.d.n()).filter(|&v| !self.covered[v]).map(|v| self.w.get(v)).sum();
        match &self.best {
            Some((incumbent, arcs)) => {
                if value > *incumbent {
                    return;
                }
                if value == *incumbent {
                    self.count += 1;
                    if self.chosen < *arcs {
                        self.best = Some((value, self.chosen.clone()));
                    }
                    return;
                }
                self.best = Some((value, self.chosen.clone()));
                self.count = 1;
            }
            None => {
                self.best = Some((value, self.chosen.clone()));
                self.count = 1;
            }
        }
    }
}

/// Kahn's algorithm on the digraph with the flagged arcs reversed. Arc
/// multiplicity after reversal does not change the outcome, so coincident
/// arcs are left as they fall.
fn acyclic_after_reversal(d: &Digraph, in_m: &[bool]) -> bool {
    let n = d.n();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for (i, &(u, v)) in d.arcs().iter().enumerate() {
        let (a, b) = if in_m[i] { (v, u) } else { (u, v) };
        out[a].push(b);
        indeg[b] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &t in &out[v] {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                stack.push(t);
            }
        }
    }
    seen == n
}
