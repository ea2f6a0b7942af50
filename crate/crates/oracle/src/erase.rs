use std::collections::BTreeSet;

use complex_topo::RegularComplex;
use rand::Rng;

use crate::result::{OracleError, OracleResult};

pub const DEFAULT_ERASE_CAP: usize = 12;

/// Outcome of one collapse run: whether every triangle was removed, and the
/// (edge id, triangle id) pairs in the order they were collapsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collapse {
    pub erased: bool,
    pub sequence: Vec<(usize, usize)>,
}

/// Deletes the triangles of `s`, then repeatedly collapses a free edge
/// (an edge with exactly one remaining triangle coface) together with that
/// triangle, lowest edge id first, until no free edge is left. True iff no
/// triangle survives.
///
/// `k` must be simplicial of dimension at most 2 and `s` must list
/// triangle ids.
pub fn greedy_erase(k: &RegularComplex, s: &[usize]) -> Collapse {
    erase_by(k, s, |free| *free.iter().next().expect("picker runs on nonempty sets"))
}

/// Same collapse with the free edge drawn at random each round. The final
/// boolean is order-independent; this variant exists to test exactly that.
pub fn greedy_erase_with<R: Rng>(k: &RegularComplex, s: &[usize], rng: &mut R) -> Collapse {
    erase_by(k, s, |free| {
        let nth = rng.gen_range(0..free.len());
        *free.iter().nth(nth).expect("picker runs on nonempty sets")
    })
}

fn erase_by(
    k: &RegularComplex,
    s: &[usize],
    mut pick: impl FnMut(&BTreeSet<usize>) -> usize,
) -> Collapse {
    assert!(k.is_simplicial(), "collapsing is defined on simplicial input");
    assert!(k.dim().map_or(true, |d| d <= 2), "collapsing is defined up to dimension 2");
    let n = k.len();
    let mut alive = vec![false; n];
    let mut remaining = 0usize;
    for (id, cell) in k.cells().iter().enumerate() {
        if cell.dim() == 2 {
            alive[id] = true;
            remaining += 1;
        }
    }
    for &t in s {
        assert!(t < n && k.cell(t).dim() == 2, "deleted cells must be triangles");
        if alive[t] {
            alive[t] = false;
            remaining -= 1;
        }
    }

    let mut coface_count = vec![0usize; n];
    for (id, cell) in k.cells().iter().enumerate() {
        if cell.dim() == 2 && alive[id] {
            for &e in k.faces(id) {
                coface_count[e] += 1;
            }
        }
    }
    let mut free: BTreeSet<usize> = k
        .cells()
        .iter()
        .enumerate()
        .filter(|(id, cell)| cell.dim() == 1 && coface_count[*id] == 1)
        .map(|(id, _)| id)
        .collect();

    let mut gone = vec![false; n];
    let mut sequence = Vec::new();
    while !free.is_empty() {
        let edge = pick(&free);
        free.remove(&edge);
        let tri = k
            .cofaces(edge)
            .iter()
            .copied()
            .find(|&t| alive[t])
            .expect("a free edge has exactly one live triangle");
        alive[tri] = false;
        remaining -= 1;
        gone[edge] = true;
        sequence.push((edge, tri));
        for &e in k.faces(tri) {
            if e == edge || gone[e] {
                continue;
            }
            coface_count[e] -= 1;
            match coface_count[e] {
                1 => {
                    free.insert(e);
                }
                0 => {
                    free.remove(&e);
                }
                _ => {}
            }
        }
    }
    Collapse { erased: remaining == 0, sequence }
}

pub fn brute_force_erasibility(
    k: &RegularComplex,
    budget: u64,
) -> Result<OracleResult, OracleError> {
    brute_force_erasibility_capped(k, budget, DEFAULT_ERASE_CAP)
}

/// Tries every triangle set of size 0, 1, ... up to the budget and reports
/// the first size at which some deletion collapses the rest away; `value`
/// stays `None` when no set within the budget works. The witness is the
/// lexicographically first successful set of that size; `optimal_count`
/// counts all successes at the winning size.
pub fn brute_force_erasibility_capped(
    k: &RegularComplex,
    budget: u64,
    cap: usize,
) -> Result<OracleResult, OracleError> {
    let triangles: Vec<usize> = k
        .cells()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.dim() == 2)
        .map(|(id, _)| id)
        .collect();
    if triangles.len() > cap {
        return Err(OracleError::CapExceeded { what: "triangle", size: triangles.len(), cap });
    }

    let limit = (budget as usize).min(triangles.len());
    for size in 0..=limit {
        let mut witness: Option<Vec<usize>> = None;
        let mut count = 0u64;
        let mut combo = Vec::with_capacity(size);
        combinations(&triangles, size, 0, &mut combo, &mut |s| {
            if greedy_erase(k, s).erased {
                count += 1;
                if witness.is_none() {
                    witness = Some(s.to_vec());
                }
            }
        });
        if let Some(s) = witness {
            return Ok(OracleResult {
                value: Some(size as f64),
                order: None,
                matching: None,
                triangles: Some(s),
                optimal_count: count,
            });
        }
    }
    Ok(OracleResult::nothing())
}

fn combinations(
    items: &[usize],
    size: usize,
    from: usize,
    combo: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if combo.len() == size {
        visit(combo);
        return;
    }
    let still_needed = size - combo.len();
    for i in from..=items.len().saturating_sub(still_needed) {
        combo.push(items[i]);
        combinations(items, size, i + 1, combo, visit);
        combo.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplicial(lists: &[&[&str]]) -> RegularComplex {
        let maximal: Vec<Vec<String>> =
            lists.iter().map(|s| s.iter().map(|v| v.to_string()).collect()).collect();
        RegularComplex::simplicial(&maximal).unwrap()
    }

    fn split_square() -> RegularComplex {
        simplicial(&[&["a", "b", "c"], &["a", "c", "d"]])
    }

    fn tetra_boundary() -> RegularComplex {
        simplicial(&[&["a", "b", "c"], &["a", "b", "d"], &["a", "c", "d"], &["b", "c", "d"]])
    }

    #[test]
    fn the_split_square_collapses_on_its_own() {
        let k = split_square();
        let run = greedy_erase(&k, &[]);
        assert!(run.erased);
        assert_eq!(run.sequence.len(), 2);
        for &(e, t) in &run.sequence {
            assert_eq!(k.cell(e).dim(), 1);
            assert_eq!(k.cell(t).dim(), 2);
            assert!(k.is_cover(e, t));
        }
    }

    #[test]
    fn the_sphere_has_no_free_edge() {
        let k = tetra_boundary();
        let run = greedy_erase(&k, &[]);
        assert!(!run.erased);
        assert!(run.sequence.is_empty());
    }

    #[test]
    fn deleting_any_sphere_triangle_frees_the_rest() {
        let k = tetra_boundary();
        let triangles: Vec<usize> =
            (0..k.len()).filter(|&c| k.cell(c).dim() == 2).collect();
        assert_eq!(triangles.len(), 4);
        for &t in &triangles {
            let run = greedy_erase(&k, &[t]);
            assert!(run.erased);
            assert_eq!(run.sequence.len(), 3);
        }
    }

    #[test]
    fn graphs_without_triangles_count_as_erased() {
        let k = simplicial(&[&["a", "b"], &["b", "c"]]);
        assert!(greedy_erase(&k, &[]).erased);
    }

    #[test]
    fn erasibility_search_finds_the_square_free() {
        let r = brute_force_erasibility(&split_square(), 0).unwrap();
        assert_eq!(r.value, Some(0.0));
        assert_eq!(r.triangles, Some(vec![]));
        assert_eq!(r.optimal_count, 1);
    }

    #[test]
    fn erasibility_search_on_the_sphere() {
        let k = tetra_boundary();
        let no = brute_force_erasibility(&k, 0).unwrap();
        assert!(!no.is_feasible());

        let yes = brute_force_erasibility(&k, 1).unwrap();
        assert_eq!(yes.value, Some(1.0));
        assert_eq!(yes.triangles.as_ref().unwrap().len(), 1);
        // All four deletions work and the witness is the first of them.
        assert_eq!(yes.optimal_count, 4);
        let first_triangle = (0..k.len()).find(|&c| k.cell(c).dim() == 2).unwrap();
        assert_eq!(yes.triangles, Some(vec![first_triangle]));
    }

    #[test]
    fn the_triangle_cap_is_enforced() {
        // A fan of 13 triangles around the hub edge a-b exceeds the cap.
        let lists: Vec<Vec<String>> = (0..13)
            .map(|i| vec!["a".to_string(), "b".to_string(), format!("v{i:02}")])
            .collect();
        let k = RegularComplex::simplicial(&lists).unwrap();
        let err = brute_force_erasibility(&k, 2).unwrap_err();
        assert_eq!(err, OracleError::CapExceeded { what: "triangle", size: 13, cap: 12 });
        assert!(brute_force_erasibility_capped(&k, 2, 13).is_ok());
    }
}
