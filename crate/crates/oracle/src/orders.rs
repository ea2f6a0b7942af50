use graph_core::{Digraph, Matching, VertexOrder, WeightMap};

use crate::result::{OracleError, OracleResult};

pub const DEFAULT_ORDER_CAP: usize = 10;

pub fn brute_force_orders(d: &Digraph, w: &WeightMap) -> Result<OracleResult, OracleError> {
    brute_force_orders_capped(d, w, DEFAULT_ORDER_CAP)
}

/// Walks all |V|! vertex orders lexicographically, keeps those whose
/// backward-edge set is a matching, and minimizes the weight of the
/// unmatched vertices. Only a strictly better value replaces the incumbent,
/// so the reported order is the lexicographically smallest optimum.
///
/// Value comparisons are exact; ties are only meaningful for weights whose
/// sums carry no rounding, integers in practice.
pub fn brute_force_orders_capped(
    d: &Digraph,
    w: &WeightMap,
    cap: usize,
) -> Result<OracleResult, OracleError> {
    let n = d.n();
    if n > cap {
        return Err(OracleError::CapExceeded { what: "vertex", size: n, cap });
    }
    assert_eq!(w.len(), n, "weight map must cover the vertex set");

    let mut perm: Vec<usize> = (0..n).collect();
    let mut pos = vec![0usize; n];
    let mut hits = vec![false; n];
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut count = 0u64;
    loop {
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        hits.fill(false);
        let mut feasible = true;
        for &(u, v) in d.arcs() {
            if pos[v] < pos[u] {
                // Second backward arc at either endpoint: not a matching.
                if hits[u] || hits[v] {
                    feasible = false;
                    break;
                }
                hits[u] = true;
                hits[v] = true;
            }
        }
        if feasible {
            let value: f64 = (0..n).filter(|&v| !hits[v]).map(|v| w.get(v)).sum();
            match &best {
                Some((incumbent, _)) if value > *incumbent => {}
                Some((incumbent, _)) if value == *incumbent => count += 1,
                _ => {
                    best = Some((value, perm.clone()));
                    count = 1;
                }
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }

    let Some((value, seq)) = best else {
        return Ok(OracleResult::nothing());
    };
    let order = VertexOrder::new(seq).expect("enumerated sequences are permutations");
    let matching = Matching::new(d.backward_edges(&order))
        .expect("feasible orders have matching backward sets");
    Ok(OracleResult {
        value: Some(value),
        order: Some(order),
        matching: Some(matching),
        triangles: None,
        optimal_count: count,
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
