use graph_core::{read_dg, write_dg, Digraph, Matching, VertexOrder, WeightMap};
use proptest::prelude::*;

fn arb_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |mask| {
            let arcs: Vec<_> = pairs
                .iter()
                .zip(&mask)
                .filter(|(_, keep)| **keep)
                .map(|(&a, _)| a)
                .collect();
            Digraph::new(n, &arcs).unwrap()
        })
    })
}

fn arb_order(n: usize) -> impl Strategy<Value = VertexOrder> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|seq| VertexOrder::new(seq).unwrap())
}

proptest! {
    // Reversing every backward edge of any vertex order leaves a DAG, so any
    // order whose backward edges form a matching is feasible.
    #[test]
    fn reversing_all_backward_edges_gives_dag(d in arb_digraph(7)) {
        let n = d.n();
        proptest!(|(order in arb_order(n))| {
            let back = d.backward_edges(&order);
            let mut arcs: Vec<(usize, usize)> = Vec::new();
            for &a in d.arcs() {
                if back.contains(&a) {
                    arcs.push((a.1, a.0));
                } else {
                    arcs.push(a);
                }
            }
            arcs.sort_unstable();
            arcs.dedup();
            let reversed = Digraph::new(n, &arcs).unwrap();
            prop_assert!(reversed.is_acyclic());
        });
    }

    #[test]
    fn backward_and_forward_edges_partition_arcs(d in arb_digraph(7)) {
        let n = d.n();
        proptest!(|(order in arb_order(n))| {
            let back = d.backward_edges(&order);
            for &(u, v) in d.arcs() {
                let is_back = order.position(v) < order.position(u);
                prop_assert_eq!(is_back, back.contains(&(u, v)));
            }
        });
    }

    // When the backward edges of an order form a matching, the order
    // recovered from that matching must induce the same backward set.
    #[test]
    fn matching_round_trips_through_order(d in arb_digraph(6)) {
        let n = d.n();
        proptest!(|(order in arb_order(n))| {
            let back = d.backward_edges(&order);
            if d.is_matching(&back) {
                let m = Matching::new(back.clone()).unwrap();
                let recovered = d.order_of_matching(&m).unwrap();
                prop_assert_eq!(d.backward_edges(&recovered), back);
            }
        });
    }

    #[test]
    fn dg_round_trips(d in arb_digraph(6), raw in proptest::collection::vec(-8i32..8, 6)) {
        let w = WeightMap::new((0..d.n()).map(|v| f64::from(raw[v])).collect()).unwrap();
        let text = write_dg(&d, &w);
        let (d2, w2) = read_dg(&text).unwrap();
        prop_assert_eq!(d2.arcs(), d.arcs());
        prop_assert_eq!(d2.labels(), d.labels());
        prop_assert_eq!(w2.values(), w.values());
        prop_assert_eq!(write_dg(&d2, &w2), text);
    }

    // With nonnegative weights, matching more vertices never hurts.
    #[test]
    fn objective_monotone_under_extension(d in arb_digraph(6)) {
        let w = WeightMap::ones(d.n());
        let feasible: Vec<Matching> = collect_feasible(&d);
        for m in &feasible {
            for &extra in d.arcs() {
                if m.contains(extra) {
                    continue;
                }
                let mut arcs = m.arcs().to_vec();
                arcs.push(extra);
                if let Ok(bigger) = Matching::new(arcs) {
                    if d.is_feedback_morse_matching(bigger.arcs()) {
                        prop_assert!(d.objective(&w, &bigger) <= d.objective(&w, m));
                    }
                }
            }
        }
    }
}

fn collect_feasible(d: &Digraph) -> Vec<Matching> {
    let mut out = Vec::new();
    let arcs = d.arcs();
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    fn rec(
        d: &Digraph,
        arcs: &[(usize, usize)],
        i: usize,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Matching>,
    ) {
        if i == arcs.len() {
            if let Ok(m) = Matching::new(chosen.clone()) {
                if d.is_feedback_morse_matching(m.arcs()) {
                    out.push(m);
                }
            }
            return;
        }
        rec(d, arcs, i + 1, chosen, out);
        let (u, v) = arcs[i];
        if !chosen.iter().any(|&(a, b)| a == u || a == v || b == u || b == v) {
            chosen.push((u, v));
            rec(d, arcs, i + 1, chosen, out);
            chosen.pop();
        }
    }
    rec(d, arcs, 0, &mut chosen, &mut out);
    out
}
