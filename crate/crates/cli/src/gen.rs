//! Deterministic instance generators. Everything is a pure function of the
//! family parameters and the seed, so regenerated corpora are byte-identical.

use clap::ValueEnum;
use complex_topo::RegularComplex;
use graph_core::{Digraph, WeightMap};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treedecomp::TreeDecomposition;

use crate::config::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Random k-tree subgraph with random arc directions; ships its own
    /// width-k decomposition
    PartialKtreeDigraph,
    /// Arcs 0 -> 1 -> ... -> n-1 -> 0
    DirectedCycle,
    /// Both arcs between every vertex pair
    BidirectedClique,
    /// The full triangle abc with all faces
    TriangleClosure,
    /// Boundary of the tetrahedron abcd
    SphereBoundary,
    /// n-by-n square grid, each square split into two triangles
    SquareGridComplex,
    /// k distinct triangles over an n-vertex pool, closed downward
    #[value(name = "random-2-complex")]
    RandomTwoComplex,
}

/// Parameters of one generation run. `n` is the size knob of the parametric
/// families and ignored by the fixed ones; `k` is the k-tree width or the
/// triangle count; `arc_prob` is the edge keep probability of the partial
/// k-tree family.
#[derive(Debug, Clone)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: Option<usize>,
    pub k: usize,
    pub arc_prob: f64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub enum Generated {
    Digraph { graph: Digraph, weights: WeightMap, td: Option<TreeDecomposition> },
    Complex(RegularComplex),
}

pub fn generate(spec: &InstanceSpec) -> Result<Generated, CliError> {
    let need_n = |family: &str| {
        spec.n.ok_or_else(|| CliError::Input(format!("family {family} needs -n")))
    };
    let digraph = |graph: Digraph, td: Option<TreeDecomposition>| {
        let weights = WeightMap::ones(graph.n());
        Generated::Digraph { graph, weights, td }
    };
    match spec.family {
        Family::PartialKtreeDigraph => {
            let n = need_n("partial-ktree-digraph")?;
            if n == 0 {
                return Err(CliError::Input("partial-ktree-digraph needs n >= 1".into()));
            }
            if spec.k == 0 {
                return Err(CliError::Input("partial-ktree-digraph needs k >= 1".into()));
            }
            if !(0.0..=1.0).contains(&spec.arc_prob) {
                return Err(CliError::Input("--arc-prob must lie in [0, 1]".into()));
            }
            let (graph, td) = partial_ktree_digraph(n, spec.k, spec.arc_prob, spec.seed);
            Ok(digraph(graph, Some(td)))
        }
        Family::DirectedCycle => {
            let n = need_n("directed-cycle")?;
            if n < 2 {
                return Err(CliError::Input("directed-cycle needs n >= 2".into()));
            }
            Ok(digraph(directed_cycle(n), None))
        }
        Family::BidirectedClique => {
            let n = need_n("bidirected-clique")?;
            if n < 2 {
                return Err(CliError::Input("bidirected-clique needs n >= 2".into()));
            }
            Ok(digraph(bidirected_clique(n), None))
        }
        Family::TriangleClosure => Ok(Generated::Complex(triangle_closure())),
        Family::SphereBoundary => Ok(Generated::Complex(sphere_boundary())),
        Family::SquareGridComplex => {
            let n = need_n("square-grid-complex")?;
            if n == 0 {
                return Err(CliError::Input("square-grid-complex needs n >= 1".into()));
            }
            Ok(Generated::Complex(square_grid_complex(n)))
        }
        Family::RandomTwoComplex => {
            let n = need_n("random-2-complex")?;
            if !(3..=64).contains(&n) {
                return Err(CliError::Input("random-2-complex needs 3 <= n <= 64".into()));
            }
            let pool = n * (n - 1) * (n - 2) / 6;
            if spec.k > pool {
                return Err(CliError::Input(format!(
                    "random-2-complex over {n} vertices has only {pool} distinct triangles"
                )));
            }
            Ok(Generated::Complex(random_two_complex(n, spec.k, spec.seed)))
        }
    }
}

fn labeled(n: usize, arcs: &[(usize, usize)]) -> Digraph {
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    Digraph::with_labels(labels, arcs).expect("generated arcs are simple")
}

pub fn directed_cycle(n: usize) -> Digraph {
    assert!(n >= 2, "a directed cycle needs at least two vertices");
    let arcs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    labeled(n, &arcs)
}

pub fn bidirected_clique(n: usize) -> Digraph {
    assert!(n >= 2, "a bidirected clique needs at least two vertices");
    let mut arcs = Vec::with_capacity(n * (n - 1));
    for u in 0..n {
        for v in 0..n {
            if u != v {
                arcs.push((u, v));
            }
        }
    }
    labeled(n, &arcs)
}

/// Grows a random k-tree: a clique on the first min(n, k+1) vertices, then
/// each further vertex attached to a uniformly chosen existing k-clique.
/// Each edge survives with probability `keep_prob` and gets a random
/// direction. The returned decomposition has one bag per attachment (width
/// at most k) and covers every kept edge, so it stays valid for the
/// thinned-out subgraph.
pub fn partial_ktree_digraph(
    n: usize,
    k: usize,
    keep_prob: f64,
    seed: u64,
) -> (Digraph, TreeDecomposition) {
    assert!(n >= 1 && k >= 1);
    assert!((0.0..=1.0).contains(&keep_prob));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let c0 = n.min(k + 1);
    let mut undirected: Vec<(usize, usize)> = Vec::new();
    for u in 0..c0 {
        for v in u + 1..c0 {
            undirected.push((u, v));
        }
    }
    let mut bags: Vec<Vec<usize>> = vec![(0..c0).collect()];
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();
    // Every k-clique of the k-tree built so far, tagged with a bag that
    // contains it; attaching through that bag keeps occurrences connected.
    let mut cliques: Vec<(Vec<usize>, usize)> = Vec::new();
    if c0 == k + 1 {
        for omit in 0..c0 {
            let c: Vec<usize> = (0..c0).filter(|&x| x != omit).collect();
            cliques.push((c, 0));
        }
    }
    for v in c0..n {
        let (c, parent) = cliques[rng.gen_range(0..cliques.len())].clone();
        for &u in &c {
            undirected.push((u, v));
        }
        let mut bag = c.clone();
        bag.push(v);
        let here = bags.len();
        bags.push(bag);
        tree_edges.push((parent, here));
        for &omit in &c {
            let mut clique: Vec<usize> = c.iter().copied().filter(|&x| x != omit).collect();
            clique.push(v);
            cliques.push((clique, here));
        }
    }

    let mut arcs = Vec::with_capacity(undirected.len());
    for (u, v) in undirected {
        if !rng.gen_bool(keep_prob) {
            continue;
        }
        arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
    }
    (labeled(n, &arcs), TreeDecomposition::new(bags, tree_edges))
}

fn closure_of(maximal: &[&[&str]]) -> RegularComplex {
    let simplices: Vec<Vec<String>> =
        maximal.iter().map(|s| s.iter().map(|v| v.to_string()).collect()).collect();
    RegularComplex::simplicial(&simplices).expect("generated simplices are well formed")
}

pub fn triangle_closure() -> RegularComplex {
    closure_of(&[&["a", "b", "c"]])
}

pub fn sphere_boundary() -> RegularComplex {
    closure_of(&[&["a", "b", "c"], &["a", "b", "d"], &["a", "c", "d"], &["b", "c", "d"]])
}

/// Triangulated n-by-n grid: (n+1)^2 vertices, every unit square cut along
/// its rising diagonal. Collapsible for every n.
pub fn square_grid_complex(n: usize) -> RegularComplex {
    assert!(n >= 1);
    let name = |i: usize, j: usize| format!("x{i}y{j}");
    let mut maximal = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            maximal.push(vec![name(i, j), name(i + 1, j), name(i, j + 1)]);
            maximal.push(vec![name(i + 1, j), name(i, j + 1), name(i + 1, j + 1)]);
        }
    }
    RegularComplex::simplicial(&maximal).expect("grid triangles are well formed")
}

/// Downward closure of k triangles drawn uniformly without replacement from
/// all 3-subsets of an n-vertex pool. Vertices outside every chosen triangle
/// do not appear in the complex.
pub fn random_two_complex(n: usize, k: usize, seed: u64) -> RegularComplex {
    assert!((3..=64).contains(&n), "vertex pool must have 3 to 64 vertices");
    let mut triples: Vec<[usize; 3]> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                triples.push([a, b, c]);
            }
        }
    }
    assert!(k <= triples.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<[usize; 3]> =
        sample(&mut rng, triples.len(), k).into_iter().map(|i| triples[i]).collect();
    picked.sort_unstable();
    let maximal: Vec<Vec<String>> =
        picked.iter().map(|t| t.iter().map(|&v| format!("v{v}")).collect()).collect();
    RegularComplex::simplicial(&maximal).expect("distinct triples are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use treedecomp::validate_td;

    #[test]
    fn cycle_and_clique_shapes() {
        let c = directed_cycle(3);
        assert_eq!(c.arcs(), &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(c.label(0), "v0");
        let q = bidirected_clique(3);
        assert_eq!(q.m(), 6);
        assert!(q.has_arc(2, 1) && q.has_arc(1, 2));
    }

    #[test]
    fn partial_ktree_is_deterministic_and_ships_a_valid_td() {
        let (g, td) = partial_ktree_digraph(50, 3, 1.0, 7);
        assert_eq!(g.n(), 50);
        assert_eq!(g.m(), 6 + 46 * 3);
        assert!(td.width() <= 3);
        assert_eq!(validate_td(&g, &td), Ok(()));

        let (again, _) = partial_ktree_digraph(50, 3, 1.0, 7);
        assert_eq!(g.arcs(), again.arcs());
        let (other, _) = partial_ktree_digraph(50, 3, 1.0, 8);
        assert_ne!(g.arcs(), other.arcs());
    }

    #[test]
    fn partial_ktree_thinning_keeps_the_td_valid() {
        let (g, td) = partial_ktree_digraph(30, 3, 0.4, 1);
        assert!(g.m() < 6 + 26 * 3);
        assert_eq!(validate_td(&g, &td), Ok(()));
    }

    #[test]
    fn tiny_partial_ktree_is_a_clique_bag() {
        let (g, td) = partial_ktree_digraph(2, 3, 1.0, 0);
        assert_eq!(g.m(), 1);
        assert_eq!(td.bags(), &[vec![0, 1]]);
    }

    #[test]
    fn fixed_complexes_have_the_known_sizes() {
        assert_eq!(triangle_closure().len(), 7);
        let sphere = sphere_boundary();
        assert_eq!(sphere.len(), 14);
        assert_eq!(sphere.euler_characteristic(), 2);
    }

    #[test]
    fn grid_counts_match_the_construction() {
        let k = square_grid_complex(2);
        assert_eq!(k.count_by_dim(), vec![9, 16, 8]);
        assert_eq!(k.euler_characteristic(), 1);
    }

    #[test]
    fn random_complex_has_exactly_k_triangles() {
        let k = random_two_complex(6, 5, 3);
        assert_eq!(k.count_by_dim()[2], 5);
        assert_eq!(random_two_complex(6, 5, 3), k);
        assert_eq!(random_two_complex(6, 0, 0).len(), 0);
    }

    #[test]
    fn generate_validates_parameters() {
        let spec = InstanceSpec {
            family: Family::DirectedCycle,
            n: Some(1),
            k: 3,
            arc_prob: 1.0,
            seed: 0,
        };
        assert!(matches!(generate(&spec), Err(CliError::Input(_))));
        let spec = InstanceSpec { n: None, ..spec };
        assert!(matches!(generate(&spec), Err(CliError::Input(_))));
        let spec = InstanceSpec { family: Family::RandomTwoComplex, n: Some(4), k: 5, ..spec };
        assert!(matches!(generate(&spec), Err(CliError::Input(_))));
        let spec = InstanceSpec { family: Family::SphereBoundary, ..spec };
        assert!(generate(&spec).is_ok());
    }
}
