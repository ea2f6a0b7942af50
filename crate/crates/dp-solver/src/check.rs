//! Exhaustive cross-checks of solver tables against the defining
//! minimization on processed subgraphs. Every node costs |W_t|! order
//! enumerations, so this is for small instances only. Comparisons are
//! exact, which assumes integral weights (float sums are reassociated).

use std::collections::BTreeMap;

use graph_core::WeightMap;
use treedecomp::{processed_subgraph, NiceTreeDecomposition};

use crate::steps::DPTable;

/// Keys are (bag order as global ids, matched bag vertices sorted).
pub type RestrictedTable = BTreeMap<(Vec<usize>, Vec<usize>), f64>;

/// Builds the restricted-problem table at `node` straight from the
/// definition: enumerate every total order of the processed subgraph, keep
/// those whose backward arcs form a matching, and group minima of the
/// unmatched weight outside the bag by induced bag order and matched bag
/// subset. Orders that induce no entry leave the sentinel (absence) behind.
pub fn exhaustive_node_table(
    w: &WeightMap,
    ntd: &NiceTreeDecomposition,
    node: usize,
) -> RestrictedTable {
    let (sub, map) = processed_subgraph(ntd, node);
    let bag = &ntd.node(node).bag;
    let nloc = sub.n();
    let in_bag: Vec<bool> = map.iter().map(|gv| bag.binary_search(gv).is_ok()).collect();

    let mut out = RestrictedTable::new();
    let mut perm: Vec<usize> = (0..nloc).collect();
    let mut posn = vec![0usize; nloc];
    permute(&mut perm, 0, &mut |p| {
        for (i, &x) in p.iter().enumerate() {
            posn[x] = i;
        }
        let mut hits = vec![0u8; nloc];
        for &(u, v) in sub.arcs() {
            if posn[v] < posn[u] {
                hits[u] += 1;
                hits[v] += 1;
                if hits[u] > 1 || hits[v] > 1 {
                    return;
                }
            }
        }
        let mut bag_order = Vec::new();
        for &x in p {
            if in_bag[x] {
                bag_order.push(map[x]);
            }
        }
        let mut matched = Vec::new();
        let mut cost = 0.0;
        for x in 0..nloc {
            if in_bag[x] {
                if hits[x] == 1 {
                    matched.push(map[x]);
                }
            } else if hits[x] == 0 {
                cost += w.get(map[x]);
            }
        }
        out.entry((bag_order, matched))
            .and_modify(|c| {
                if cost < *c {
                    *c = cost;
                }
            })
            .or_insert(cost);
    });
    out
}

/// Converts a solver table to global-id keys for comparison.
pub fn table_as_globals(table: &DPTable, bag: &[usize]) -> RestrictedTable {
    table
        .iter()
        .map(|(k, &v)| ((k.global_order(bag), k.matched_globals(bag)), v))
        .collect()
}

/// Compares every node table of a finished solve against the exhaustive
/// definition. Equality is two-sided: stored states must carry the optimal
/// restricted value, and absent states must have no feasible realization.
pub fn verify_all_nodes(
    w: &WeightMap,
    ntd: &NiceTreeDecomposition,
    tables: &[DPTable],
) -> Result<(), String> {
    for node in 0..ntd.len() {
        let dp = table_as_globals(&tables[node], &ntd.node(node).bag);
        let exhaustive = exhaustive_node_table(w, ntd, node);
        if dp != exhaustive {
            return Err(format!(
                "node {node}: solver table has {} states, exhaustive has {}, or values differ",
                dp.len(),
                exhaustive.len()
            ));
        }
    }
    Ok(())
}

fn permute(xs: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}
