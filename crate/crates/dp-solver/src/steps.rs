use std::collections::HashMap;

use graph_core::Digraph;

use crate::state::{mask_drop_slot, mask_open_slot, BagState};

/// Sparse table of one node; a missing state is the infeasible sentinel.
pub type DPTable = HashMap<BagState, f64>;

pub(crate) fn relax(table: &mut DPTable, key: BagState, val: f64) {
    table
        .entry(key)
        .and_modify(|cur| {
            if val < *cur {
                *cur = val;
            }
        })
        .or_insert(val);
}

/// The empty-bag table of a leaf: one state, the empty order, cost zero.
pub fn leaf_init() -> DPTable {
    let mut t = DPTable::new();
    t.insert(BagState::empty(), 0.0);
    t
}

/// Introducing `v` emits every insertion position of `v` into each child
/// order, always unmatched: none of v's arcs are visible yet. Costs carry
/// over unchanged.
pub fn introduce_vertex_step(child: &DPTable, child_bag: &[usize], v: usize) -> DPTable {
    let sv = child_bag.binary_search(&v).expect_err("introduced vertex is new to the bag");
    let mut out = DPTable::with_capacity(child.len());
    for (key, &cost) in child {
        let mut slots: Vec<u8> = key
            .slots()
            .into_iter()
            .map(|s| if (s as usize) < sv { s } else { s + 1 })
            .collect();
        let mask = mask_open_slot(key.mask(), sv);
        for pos in 0..=slots.len() {
            slots.insert(pos, sv as u8);
            relax(&mut out, BagState::from_slots(&slots, mask), cost);
            slots.remove(pos);
        }
    }
    out
}

/// Introducing the arc (u, v) keeps states where the arc is forward, matches
/// u and v where it is backward and both were unmatched, and kills the rest:
/// a backward arc must join the matching, and a matching admits no second
/// arc at either endpoint.
pub fn introduce_edge_step(child: &DPTable, bag: &[usize], u: usize, v: usize) -> DPTable {
    let su = bag.binary_search(&u).expect("arc tail is in the bag");
    let sv = bag.binary_search(&v).expect("arc head is in the bag");
    let bits = (1u16 << su) | (1 << sv);
    let mut out = DPTable::with_capacity(child.len());
    for (key, &cost) in child {
        let pos = key.positions();
        if pos[su] < pos[sv] {
            relax(&mut out, *key, cost);
        } else if key.mask() & bits == 0 {
            relax(&mut out, BagState::from_slots(&key.slots(), key.mask() | bits), cost);
        }
    }
    out
}

/// Forgetting `v` projects it out of the order. A state where v was matched
/// keeps its cost; one where v stayed unmatched pays ω(v) now, the only
/// moment a vertex's final status is known. Projected duplicates merge by
/// minimum.
pub fn forget_vertex_step(child: &DPTable, child_bag: &[usize], v: usize, wv: f64) -> DPTable {
    let sv = child_bag.binary_search(&v).expect("forgotten vertex is in the bag");
    let mut out = DPTable::with_capacity(child.len());
    for (key, &cost) in child {
        let slots: Vec<u8> = key
            .slots()
            .into_iter()
            .filter(|&s| s as usize != sv)
            .map(|s| if (s as usize) < sv { s } else { s - 1 })
            .collect();
        let matched = key.mask() >> sv & 1 == 1;
        let mask = mask_drop_slot(key.mask(), sv);
        let val = if matched { cost } else { cost + wv };
        relax(&mut out, BagState::from_slots(&slots, mask), val);
    }
    out
}

/// Bag vertices forced into the matching by a fixed bag order: the
/// endpoints of bag-internal backward arcs. Two such arcs sharing an
/// endpoint can never both join a matching, which the conflict flag
/// reports; every state with that order is then infeasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcedSet {
    /// Sorted global ids.
    pub vertices: Vec<usize>,
    pub conflict: bool,
}

pub fn bag_internal_forced_set(g: &Digraph, bag: &[usize], order: &[usize]) -> ForcedSet {
    let arcs = bag_arcs(g, bag);
    let state = BagState::from_globals(order, &[], bag);
    match forced_mask(&state, &arcs) {
        Some(mask) => ForcedSet {
            vertices: (0..bag.len()).filter(|&s| mask >> s & 1 == 1).map(|s| bag[s]).collect(),
            conflict: false,
        },
        None => ForcedSet { vertices: Vec::new(), conflict: true },
    }
}

/// Arcs of `g` with both endpoints inside the sorted bag, as slot pairs.
/// Probing bag pairs keeps this independent of the graph's arc count.
pub(crate) fn bag_arcs(g: &Digraph, bag: &[usize]) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    for (su, &u) in bag.iter().enumerate() {
        for (sv, &v) in bag.iter().enumerate() {
            if su != sv && g.has_arc(u, v) {
                slots.push((su, sv));
            }
        }
    }
    slots
}

/// Slot mask of endpoints of backward bag arcs; None on a shared endpoint.
pub(crate) fn forced_mask(state: &BagState, arcs_slots: &[(usize, usize)]) -> Option<u16> {
    let pos = state.positions();
    let mut hits = [0u8; 16];
    let mut mask = 0u16;
    for &(su, sv) in arcs_slots {
        if pos[sv] < pos[su] {
            hits[su] += 1;
            hits[sv] += 1;
            if hits[su] > 1 || hits[sv] > 1 {
                return None;
            }
            mask |= (1 << su) | (1 << sv);
        }
    }
    Some(mask)
}

/// Joins two child tables over the same bag. For each order present on both
/// sides the forced endpoints must be matched in both children (their arcs
/// are introduced in both subtrees), while the remaining matched vertices
/// split disjointly between the sides; costs add because the private parts
/// share no vertices or arcs.
pub fn join_step(
    left: &DPTable,
    right: &DPTable,
    bag: &[usize],
    bag_arcs_slots: &[(usize, usize)],
) -> DPTable {
    let mut left_groups: HashMap<u64, Vec<(u16, f64)>> = HashMap::new();
    for (key, &cost) in left {
        left_groups.entry(key.order_key()).or_default().push((key.mask(), cost));
    }
    let mut right_groups: HashMap<u64, Vec<(u16, f64)>> = HashMap::new();
    for (key, &cost) in right {
        right_groups.entry(key.order_key()).or_default().push((key.mask(), cost));
    }

    let mut out = DPTable::new();
    let len = bag.len();
    for (&order_key, lefts) in &left_groups {
        let Some(rights) = right_groups.get(&order_key) else { continue };
        let state = restore_order(order_key, len);
        let Some(forced) = forced_mask(&state, bag_arcs_slots) else { continue };
        for &(ml, cl) in lefts {
            if ml & forced != forced {
                continue;
            }
            for &(mr, cr) in rights {
                if mr & forced == forced && ml & mr == forced {
                    relax(
                        &mut out,
                        BagState::from_slots(&state.slots(), ml | mr),
                        cl + cr,
                    );
                }
            }
        }
    }
    out
}

pub(crate) fn restore_order(order_key: u64, len: usize) -> BagState {
    let slots: Vec<u8> = (0..len).map(|pos| (order_key >> (4 * pos) & 0xF) as u8).collect();
    BagState::from_slots(&slots, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::Digraph;

    fn table(entries: &[(&[usize], &[usize], f64)], bag: &[usize]) -> DPTable {
        entries
            .iter()
            .map(|&(order, matched, cost)| (BagState::from_globals(order, matched, bag), cost))
            .collect()
    }

    #[test]
    fn leaf_is_the_empty_state() {
        let t = leaf_init();
        assert_eq!(t.len(), 1);
        assert_eq!(t[&BagState::empty()], 0.0);
    }

    #[test]
    fn introduce_vertex_emits_all_positions_unmatched() {
        let child = table(&[(&[3], &[], 1.5)], &[3]);
        let out = introduce_vertex_step(&child, &[3], 7);
        let bag = [3, 7];
        assert_eq!(out.len(), 2);
        assert_eq!(out[&BagState::from_globals(&[7, 3], &[], &bag)], 1.5);
        assert_eq!(out[&BagState::from_globals(&[3, 7], &[], &bag)], 1.5);
    }

    #[test]
    fn introduce_vertex_keeps_matched_flags_of_others() {
        let child = table(&[(&[3], &[3], 2.0)], &[3]);
        let out = introduce_vertex_step(&child, &[3], 1);
        let bag = [1, 3];
        assert_eq!(out[&BagState::from_globals(&[1, 3], &[3], &bag)], 2.0);
        assert_eq!(out[&BagState::from_globals(&[3, 1], &[3], &bag)], 2.0);
    }

    #[test]
    fn introduce_edge_cases() {
        let bag = [0, 1];
        let child = table(
            &[
                (&[0, 1], &[], 1.0), // forward, survives as is
                (&[1, 0], &[], 2.0), // backward, both get matched
                (&[1, 0], &[0], 3.0), // backward but 0 already matched: dies
            ],
            &bag,
        );
        let out = introduce_edge_step(&child, &bag, 0, 1);
        assert_eq!(out.len(), 2);
        assert_eq!(out[&BagState::from_globals(&[0, 1], &[], &bag)], 1.0);
        assert_eq!(out[&BagState::from_globals(&[1, 0], &[0, 1], &bag)], 2.0);
    }

    #[test]
    fn forget_merges_projected_states_by_minimum() {
        let bag = [0, 1];
        let child = table(
            &[
                (&[0, 1], &[1], 5.0), // v=1 matched: cost stays 5
                (&[1, 0], &[], 1.0),  // v=1 unmatched: cost 1 + 2
            ],
            &bag,
        );
        let out = forget_vertex_step(&child, &bag, 1, 2.0);
        assert_eq!(out.len(), 1);
        assert_eq!(out[&BagState::from_globals(&[0], &[], &[0])], 3.0);
    }

    #[test]
    fn forced_set_flags_conflicts() {
        let g = Digraph::new(3, &[(1, 0), (2, 0)]).unwrap();
        // only (1, 0) backward: 0 sits after 2 but before 1
        let f = bag_internal_forced_set(&g, &[0, 1, 2], &[2, 0, 1]);
        assert_eq!(f, ForcedSet { vertices: vec![0, 1], conflict: false });
        // 0 first makes both arcs backward, and they share vertex 0
        let f = bag_internal_forced_set(&g, &[0, 1, 2], &[0, 1, 2]);
        assert!(f.conflict);
        // 0 last makes both arcs forward
        let f = bag_internal_forced_set(&g, &[0, 1, 2], &[1, 2, 0]);
        assert_eq!(f, ForcedSet { vertices: vec![], conflict: false });
    }

    #[test]
    fn join_requires_forced_vertices_and_disjoint_extras() {
        let g = Digraph::new(3, &[(1, 0)]).unwrap();
        let bag = [0, 1, 2];
        let arcs = bag_arcs(&g, &bag);
        // order [0, 1, 2] makes (1, 0) backward: 0 and 1 forced
        let left = table(
            &[
                (&[0, 1, 2], &[0, 1], 1.0),
                (&[0, 1, 2], &[0, 1, 2], 4.0),
            ],
            &bag,
        );
        let right = table(
            &[
                (&[0, 1, 2], &[0, 1], 2.0),
                (&[0, 1, 2], &[0, 1, 2], 8.0),
            ],
            &bag,
        );
        let out = join_step(&left, &right, &bag, &arcs);
        assert_eq!(out.len(), 2);
        assert_eq!(out[&BagState::from_globals(&[0, 1, 2], &[0, 1], &bag)], 3.0);
        // 2 matched on exactly one side: both pairings work, min(4+2, 1+8) = 6
        assert_eq!(out[&BagState::from_globals(&[0, 1, 2], &[0, 1, 2], &bag)], 6.0);
    }
}
