//! Properties of the two front-ends on random small 2-complexes.

use complex_topo::{
    read_sc, solve_erasibility, solve_omm, verify_gradient_field, write_sc, ErasibilityInstance,
    RegularComplex,
};
use graph_core::WeightMap;
use proptest::prelude::*;

const VERTS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

fn arb_two_complex() -> impl Strategy<Value = RegularComplex> {
    let tri = prop::sample::subsequence(VERTS.to_vec(), 3);
    let edge = prop::sample::subsequence(VERTS.to_vec(), 2);
    (prop::collection::btree_set(tri, 0..=5), prop::collection::btree_set(edge, 0..=4)).prop_map(
        |(tris, edges)| {
            let maximal: Vec<Vec<String>> = tris
                .into_iter()
                .chain(edges)
                .map(|s| s.iter().map(|v| v.to_string()).collect())
                .collect();
            RegularComplex::simplicial(&maximal).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unit_weight_solutions_verify_and_respect_parity(k in arb_two_complex()) {
        prop_assume!(!k.is_empty());
        let sol = solve_omm(&k, &WeightMap::ones(k.len())).unwrap();
        prop_assert!(sol.value >= 1.0);
        prop_assert_eq!(sol.field.critical().len() as f64, sol.value);
        prop_assert_eq!(sol.field.critical().len() % 2, k.len() % 2);
        prop_assert!(verify_gradient_field(&k, &sol.field).unwrap());
    }

    #[test]
    fn erasibility_answers_are_internally_consistent(
        k in arb_two_complex(),
        budget in 0u64..3,
    ) {
        let inst = ErasibilityInstance::new(k.clone(), budget).unwrap();
        let ans = solve_erasibility(&inst).unwrap();
        prop_assert_eq!(ans.witness.len() as u64, ans.min_critical_triangles);
        for &c in &ans.witness {
            prop_assert_eq!(k.cell(c).dim(), 2);
        }
        prop_assert_eq!(ans.erasible, ans.min_critical_triangles <= budget);
        prop_assert!(verify_gradient_field(&k, &ans.field).unwrap());
        let triangles = k.cells().iter().filter(|c| c.dim() == 2).count() as u64;
        prop_assert!(ans.min_critical_triangles <= triangles);
    }

    #[test]
    fn sc_files_round_trip(
        k in arb_two_complex(),
        picks in prop::collection::vec(-8i32..=8, 32),
    ) {
        let mut k = k;
        for id in 0..k.len() {
            k.set_weight(id, f64::from(picks[id % picks.len()]) / 2.0);
        }
        prop_assert_eq!(&read_sc(&write_sc(&k)).unwrap(), &k);
    }
}
