use graph_core::{Digraph, Matching, SolveResult, VertexOrder, WeightMap};
use thiserror::Error;
use treedecomp::{validate_discipline, DisciplineViolation, NiceTreeDecomposition, NodeKind};

use crate::state::{mask_drop_slot, mask_open_slot, BagState};
use crate::stats::{state_bound, NodeStats, StateStats};
use crate::steps::{
    bag_arcs, forced_mask, forget_vertex_step, introduce_edge_step, introduce_vertex_step,
    join_step, leaf_init, DPTable,
};

/// Default ceiling on bag sizes; b = 14 keeps b!·2^b inside u64 comfortably
/// and the per-node tables at desk scale.
pub const DEFAULT_BAG_CAP: usize = 14;

/// Hard limit of the nibble-packed state encoding.
pub const ENCODING_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("decomposition breaks the solver discipline: {0}")]
    Undisciplined(#[from] DisciplineViolation),
    #[error("bag size {bag} exceeds the cap {cap}")]
    BagCapExceeded { bag: usize, cap: usize },
    #[error("bag cap {cap} exceeds the state encoding limit {limit}")]
    BagCapUnsupported { cap: usize, limit: usize },
    #[error("weight map covers {have} vertices but the graph has {need}")]
    WeightMismatch { have: usize, need: usize },
}

/// A finished solve with everything the run produced, including the
/// per-node tables for callers that audit them.
pub struct Solved {
    pub result: SolveResult,
    pub stats: StateStats,
    pub tables: Vec<DPTable>,
}

pub fn solve_fmo(
    g: &Digraph,
    w: &WeightMap,
    ntd: &NiceTreeDecomposition,
) -> Result<(SolveResult, StateStats), SolveError> {
    solve_fmo_with_cap(g, w, ntd, DEFAULT_BAG_CAP)
}

pub fn solve_fmo_with_cap(
    g: &Digraph,
    w: &WeightMap,
    ntd: &NiceTreeDecomposition,
    cap: usize,
) -> Result<(SolveResult, StateStats), SolveError> {
    let solved = solve_fmo_full(g, w, ntd, cap)?;
    Ok((solved.result, solved.stats))
}

/// Runs the dynamic program bottom up, then reconstructs a witness order by
/// walking the tables top down. The decomposition is checked against the
/// solver discipline before anything else; the bag cap is enforced so state
/// keys stay encodable and the state-count ceiling stays meaningful.
pub fn solve_fmo_full(
    g: &Digraph,
    w: &WeightMap,
    ntd: &NiceTreeDecomposition,
    cap: usize,
) -> Result<Solved, SolveError> {
    if cap > ENCODING_LIMIT {
        return Err(SolveError::BagCapUnsupported { cap, limit: ENCODING_LIMIT });
    }
    if w.len() != g.n() {
        return Err(SolveError::WeightMismatch { have: w.len(), need: g.n() });
    }
    validate_discipline(ntd, g)?;
    let max_bag = ntd.nodes().iter().map(|t| t.bag.len()).max().unwrap_or(0);
    if max_bag > cap {
        return Err(SolveError::BagCapExceeded { bag: max_bag, cap });
    }

    let mut tables: Vec<DPTable> = (0..ntd.len()).map(|_| DPTable::new()).collect();
    for t in ntd.postorder() {
        let node = ntd.node(t);
        let table = match node.kind {
            NodeKind::Leaf => leaf_init(),
            NodeKind::IntroduceVertex(v) => {
                let c = node.children[0];
                introduce_vertex_step(&tables[c], &ntd.node(c).bag, v)
            }
            NodeKind::IntroduceEdge(u, v) => {
                introduce_edge_step(&tables[node.children[0]], &node.bag, u, v)
            }
            NodeKind::ForgetVertex(v) => {
                let c = node.children[0];
                forget_vertex_step(&tables[c], &ntd.node(c).bag, v, w.get(v))
            }
            NodeKind::Join => {
                let arcs = bag_arcs(g, &node.bag);
                join_step(&tables[node.children[0]], &tables[node.children[1]], &node.bag, &arcs)
            }
        };
        let b = node.bag.len();
        assert!(
            table.len() as u64 <= state_bound(b),
            "node {t}: {} states exceed the ceiling {} for bag size {b}",
            table.len(),
            state_bound(b),
        );
        tables[t] = table;
    }

    let per_node: Vec<NodeStats> = (0..ntd.len())
        .map(|t| NodeStats { node: t, bag_size: ntd.node(t).bag.len(), states: tables[t].len() })
        .collect();
    let stats = StateStats {
        peak_states: per_node.iter().map(|s| s.states).max().unwrap_or(0),
        max_bag_size: max_bag,
        per_node,
    };

    let result = match tables[ntd.root()].get(&BagState::empty()) {
        None => SolveResult::infeasible(),
        Some(&root_val) => {
            let seq = reconstruct(g, w, ntd, &tables, ntd.root(), BagState::empty());
            let order = VertexOrder::new(seq).expect("reconstruction yields a permutation");
            let backward = g.backward_edges(&order);
            assert!(g.is_matching(&backward), "reconstructed backward arcs form a matching");
            let matching = Matching::new(backward).expect("checked as a matching");
            let unmatched = g.unmatched_vertices(&matching);
            let value = g.objective(w, &matching);
            debug_assert!(
                (value - root_val).abs() <= 1e-9 * (1.0 + value.abs().max(root_val.abs())),
                "witness objective {value} drifts from the table value {root_val}"
            );
            SolveResult::optimal(value, order, matching, unmatched)
        }
    };
    Ok(Solved { result, stats, tables })
}

enum Pending {
    /// Insert `v` immediately before `before`, or at the end when None.
    Insert { v: usize, before: Option<usize> },
}

/// Rebuilds the order on the processed vertices under `start` that realizes
/// `tables[start][start_key]`. Unary chains are walked iteratively; joins
/// recurse into both children.
///
/// All choices are deterministic: at a forget node the candidates are ranked
/// by (child order as global ids, child matched mask); at a join the
/// smallest left submask that reproduces the value wins. An introduced
/// vertex is pinned directly before the bag vertex that follows it in the
/// bag order, sound because no arc connects it to vertices already
/// forgotten below.
fn reconstruct(
    g: &Digraph,
    w: &WeightMap,
    ntd: &NiceTreeDecomposition,
    tables: &[DPTable],
    start: usize,
    start_key: BagState,
) -> Vec<usize> {
    let mut pending: Vec<Pending> = Vec::new();
    let mut t = start;
    let mut key = start_key;
    let mut base: Vec<usize> = loop {
        let node = ntd.node(t);
        match node.kind {
            NodeKind::Leaf => break Vec::new(),
            NodeKind::IntroduceVertex(v) => {
                let order = key.global_order(&node.bag);
                let pos_v = order.iter().position(|&x| x == v).expect("v is in the bag order");
                let before = order.get(pos_v + 1).copied();
                pending.push(Pending::Insert { v, before });

                let sv = node.bag.binary_search(&v).expect("v is in the bag");
                debug_assert_eq!(key.mask() >> sv & 1, 0, "v is unmatched at its introduction");
                let child_slots: Vec<u8> = key
                    .slots()
                    .into_iter()
                    .filter(|&s| s as usize != sv)
                    .map(|s| if (s as usize) < sv { s } else { s - 1 })
                    .collect();
                key = BagState::from_slots(&child_slots, mask_drop_slot(key.mask(), sv));
                t = node.children[0];
            }
            NodeKind::IntroduceEdge(u, v) => {
                let su = node.bag.binary_search(&u).expect("u is in the bag");
                let sv = node.bag.binary_search(&v).expect("v is in the bag");
                let pos = key.positions();
                if pos[su] > pos[sv] {
                    let bits = (1u16 << su) | (1 << sv);
                    debug_assert_eq!(key.mask() & bits, bits, "backward arc endpoints are matched");
                    key = BagState::from_slots(&key.slots(), key.mask() & !bits);
                }
                t = node.children[0];
            }
            NodeKind::ForgetVertex(v) => {
                let c = node.children[0];
                let child_bag = &ntd.node(c).bag;
                let sv = child_bag.binary_search(&v).expect("v is in the child bag");
                let parent_val = tables[t][&key];
                let wv = w.get(v);

                let base_slots: Vec<u8> = key
                    .slots()
                    .into_iter()
                    .map(|s| if (s as usize) < sv { s } else { s + 1 })
                    .collect();
                let base_mask = mask_open_slot(key.mask(), sv);
                let mut candidates: Vec<(Vec<usize>, u16, BagState)> = Vec::new();
                for pos in 0..=base_slots.len() {
                    let mut slots = base_slots.clone();
                    slots.insert(pos, sv as u8);
                    let matched = BagState::from_slots(&slots, base_mask | (1 << sv));
                    if tables[c].get(&matched) == Some(&parent_val) {
                        candidates.push((matched.global_order(child_bag), matched.mask(), matched));
                    }
                    let unmatched = BagState::from_slots(&slots, base_mask);
                    if let Some(&cv) = tables[c].get(&unmatched) {
                        if cv + wv == parent_val {
                            candidates.push((
                                unmatched.global_order(child_bag),
                                unmatched.mask(),
                                unmatched,
                            ));
                        }
                    }
                }
                candidates.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
                key = candidates.into_iter().next().expect("some child state produced this value").2;
                t = c;
            }
            NodeKind::Join => {
                let (l, r) = (node.children[0], node.children[1]);
                let arcs = bag_arcs(g, &node.bag);
                let forced = forced_mask(&key, &arcs).expect("feasible join order has no conflict");
                let parent_val = tables[t][&key];
                let u_free = key.mask() & !forced;

                let mut a: u16 = 0;
                let (left_key, right_key) = loop {
                    let lk = BagState::from_slots(&key.slots(), forced | a);
                    let rk = BagState::from_slots(&key.slots(), forced | (u_free & !a));
                    if let (Some(&lv), Some(&rv)) = (tables[l].get(&lk), tables[r].get(&rk)) {
                        if lv + rv == parent_val {
                            break (lk, rk);
                        }
                    }
                    assert_ne!(a, u_free, "some split produced this join value");
                    a = a.wrapping_sub(u_free) & u_free;
                };
                let left_order = reconstruct(g, w, ntd, tables, l, left_key);
                let right_order = reconstruct(g, w, ntd, tables, r, right_key);
                break merge_orders(&left_order, &right_order, &key.global_order(&node.bag));
            }
        }
    };
    for p in pending.iter().rev() {
        let Pending::Insert { v, before } = p;
        let idx = match before {
            Some(b) => base.iter().position(|x| x == b).expect("anchor vertex is present"),
            None => base.len(),
        };
        base.insert(idx, *v);
    }
    base
}

/// Interleaves the two child orders gap by gap around the shared bag order.
/// The private parts share no vertices and no arcs, so any interleaving is
/// feasible; taking the left side first in every gap is the fixed choice.
fn merge_orders(left: &[usize], right: &[usize], bag_order: &[usize]) -> Vec<usize> {
    let b = bag_order.len();
    let split = |side: &[usize]| -> Vec<Vec<usize>> {
        let mut segs: Vec<Vec<usize>> = vec![Vec::new(); b + 1];
        let mut at = 0;
        for &x in side {
            if at < b && x == bag_order[at] {
                at += 1;
            } else {
                segs[at].push(x);
            }
        }
        debug_assert_eq!(at, b, "child order restricts to the bag order");
        segs
    };
    let segs_l = split(left);
    let segs_r = split(right);
    let mut out = Vec::with_capacity(left.len() + right.len() - b);
    for j in 0..=b {
        out.extend(&segs_l[j]);
        out.extend(&segs_r[j]);
        if j < b {
            out.push(bag_order[j]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::Status;
    use treedecomp::{heuristic_td, naive_path_decomposition, to_nice, Strategy};

    fn solve_naive(g: &Digraph, w: &WeightMap) -> (SolveResult, StateStats) {
        solve_fmo(g, w, &naive_path_decomposition(g)).unwrap()
    }

    #[test]
    fn three_cycle_pays_one_vertex() {
        let g = Digraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let w = WeightMap::ones(3);
        let (res, _) = solve_naive(&g, &w);
        assert_eq!(res.status, Status::Optimal);
        assert_eq!(res.value, Some(1.0));
        let matching = res.matching.as_ref().unwrap();
        assert_eq!(matching.len(), 1);
        assert!(g.is_feedback_morse_matching(matching.arcs()));
        let order = res.order.as_ref().unwrap();
        assert_eq!(g.backward_edges(order), matching.arcs().to_vec());
        assert_eq!(res.unmatched.as_ref().unwrap().len(), 1);
    }

    #[test]
    fn two_cycle_matches_both_endpoints() {
        let g = Digraph::new(2, &[(0, 1), (1, 0)]).unwrap();
        let (res, _) = solve_naive(&g, &WeightMap::ones(2));
        assert_eq!(res.value, Some(0.0));
    }

    #[test]
    fn shared_vertex_between_two_cycles_is_infeasible() {
        let g = Digraph::new(3, &[(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap();
        let (res, _) = solve_naive(&g, &WeightMap::ones(3));
        assert_eq!(res.status, Status::Infeasible);
        assert_eq!(res.value, None);
        assert!(res.order.is_none());
    }

    #[test]
    fn negative_weights_count_toward_the_optimum() {
        let g = Digraph::new(1, &[]).unwrap();
        let w = WeightMap::new(vec![-2.0]).unwrap();
        let (res, _) = solve_naive(&g, &w);
        assert_eq!(res.value, Some(-2.0));
    }

    #[test]
    fn empty_graph_solves_to_zero() {
        let g = Digraph::new(0, &[]).unwrap();
        let (res, _) = solve_naive(&g, &WeightMap::ones(0));
        assert_eq!(res.status, Status::Optimal);
        assert_eq!(res.value, Some(0.0));
        assert_eq!(res.order.as_ref().unwrap().len(), 0);
    }

    #[test]
    fn heuristic_decompositions_agree_with_naive_path() {
        let g = Digraph::new(
            6,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (1, 4)],
        )
        .unwrap();
        let w = WeightMap::new(vec![1.0, -1.0, 2.0, 1.0, -2.0, 3.0]).unwrap();
        let (naive, _) = solve_naive(&g, &w);
        for s in [Strategy::MinFill, Strategy::MinDegree] {
            let ntd = to_nice(&heuristic_td(&g, s), &g).unwrap();
            let (res, _) = solve_fmo(&g, &w, &ntd).unwrap();
            assert_eq!(res.value, naive.value);
            let matching = res.matching.as_ref().unwrap();
            assert!(g.is_feedback_morse_matching(matching.arcs()));
            assert_eq!(g.objective(&w, matching), res.value.unwrap());
        }
    }

    #[test]
    fn cap_violations_are_reported() {
        let g = Digraph::new(15, &[]).unwrap();
        let w = WeightMap::ones(15);
        let ntd = naive_path_decomposition(&g);
        assert_eq!(
            solve_fmo(&g, &w, &ntd).err(),
            Some(SolveError::BagCapExceeded { bag: 15, cap: DEFAULT_BAG_CAP })
        );
        assert_eq!(
            solve_fmo_with_cap(&g, &w, &ntd, 17).err(),
            Some(SolveError::BagCapUnsupported { cap: 17, limit: ENCODING_LIMIT })
        );
        let small = Digraph::new(3, &[(0, 1)]).unwrap();
        let ntd = naive_path_decomposition(&small);
        assert!(solve_fmo_with_cap(&small, &WeightMap::ones(3), &ntd, ENCODING_LIMIT).is_ok());
    }

    #[test]
    fn foreign_decomposition_is_rejected() {
        let bare = Digraph::new(2, &[]).unwrap();
        let ntd = naive_path_decomposition(&bare);
        let g = Digraph::new(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            solve_fmo(&g, &WeightMap::ones(2), &ntd),
            Err(SolveError::Undisciplined(_))
        ));
    }

    #[test]
    fn weight_map_must_cover_the_graph() {
        let g = Digraph::new(3, &[]).unwrap();
        let ntd = naive_path_decomposition(&g);
        assert_eq!(
            solve_fmo(&g, &WeightMap::ones(2), &ntd).err(),
            Some(SolveError::WeightMismatch { have: 2, need: 3 })
        );
    }

    #[test]
    fn repeated_solves_are_identical() {
        let g = Digraph::new(5, &[(0, 1), (1, 2), (2, 0), (3, 1), (4, 3), (2, 4)]).unwrap();
        let w = WeightMap::new(vec![2.0, -1.0, 1.0, 3.0, -2.0]).unwrap();
        let ntd = to_nice(&heuristic_td(&g, Strategy::MinFill), &g).unwrap();
        let (a, sa) = solve_fmo(&g, &w, &ntd).unwrap();
        let (b, sb) = solve_fmo(&g, &w, &ntd).unwrap();
        assert_eq!(a, b);
        assert_eq!(sa, sb);
    }

    #[test]
    fn stats_track_peak_and_bags() {
        let g = Digraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let (_, stats) = solve_naive(&g, &WeightMap::ones(3));
        assert_eq!(stats.per_node.len(), 2 * 3 + 3 + 1);
        assert_eq!(stats.max_bag_size, 3);
        assert!(stats.peak_states as u64 <= state_bound(3));
        assert!(stats.per_node.iter().all(|s| s.states as u64 <= state_bound(s.bag_size)));
    }
}
