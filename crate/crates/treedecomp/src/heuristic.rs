use std::collections::BTreeSet;

use graph_core::Digraph;

use crate::td::TreeDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Eliminate the vertex whose neighborhood needs the fewest fill edges;
    /// ties go to the smaller degree, then the smaller id.
    MinFill,
    /// Eliminate the vertex of smallest degree; ties go to the smaller id.
    MinDegree,
}

/// Elimination-ordering tree decomposition over the underlying undirected
/// graph. Each eliminated vertex contributes the bag of itself plus its
/// remaining neighbors; the bag's parent belongs to the neighbor eliminated
/// soonest afterwards, which keeps occurrences connected. Components are
/// chained at their roots so the result is a single tree.
pub fn heuristic_td(g: &Digraph, strategy: Strategy) -> TreeDecomposition {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(u, v) in g.arcs() {
        adj[u].insert(v);
        adj[v].insert(u);
    }

    let mut alive = vec![true; n];
    let mut elim_pos = vec![usize::MAX; n];
    let mut bags: Vec<Vec<usize>> = Vec::with_capacity(n);

    for round in 0..n {
        let v = pick(strategy, &adj, &alive);
        let neigh: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in neigh.iter().enumerate() {
            for &b in &neigh[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &neigh {
            adj[a].remove(&v);
        }
        adj[v].clear();
        alive[v] = false;
        elim_pos[v] = round;

        let mut bag = neigh;
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
    }

    // bags[i] belongs to the vertex eliminated in round i, so a vertex's bag
    // index is its elimination position
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for i in 0..bags.len() {
        let parent = bags[i]
            .iter()
            .copied()
            .filter(|&x| elim_pos[x] != i)
            .min_by_key(|&x| elim_pos[x]);
        match parent {
            Some(u) => edges.push((i, elim_pos[u])),
            None => roots.push(i),
        }
    }
    for pair in roots.windows(2) {
        edges.push((pair[0], pair[1]));
    }
    TreeDecomposition::new(bags, edges)
}

fn pick(strategy: Strategy, adj: &[BTreeSet<usize>], alive: &[bool]) -> usize {
    let mut best: Option<((usize, usize, usize), usize)> = None;
    for v in 0..adj.len() {
        if !alive[v] {
            continue;
        }
        let deg = adj[v].len();
        let key = match strategy {
            Strategy::MinDegree => (deg, v, 0),
            Strategy::MinFill => {
                let neigh: Vec<usize> = adj[v].iter().copied().collect();
                let mut fill = 0;
                for (i, &a) in neigh.iter().enumerate() {
                    for &b in &neigh[i + 1..] {
                        if !adj[a].contains(&b) {
                            fill += 1;
                        }
                    }
                }
                (fill, deg, v)
            }
        };
        if best.map_or(true, |(bk, _)| key < bk) {
            best = Some((key, v));
        }
    }
    best.expect("some vertex is still alive").1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::td::validate_td;

    #[test]
    fn tree_input_has_width_one() {
        let g = Digraph::new(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        for s in [Strategy::MinFill, Strategy::MinDegree] {
            let td = heuristic_td(&g, s);
            assert_eq!(validate_td(&g, &td), Ok(()));
            assert_eq!(td.width(), 1);
        }
    }

    #[test]
    fn clique_input_has_full_width() {
        let mut arcs = Vec::new();
        for u in 0..4 {
            for v in (u + 1)..4 {
                arcs.push((u, v));
            }
        }
        let g = Digraph::new(4, &arcs).unwrap();
        let td = heuristic_td(&g, Strategy::MinFill);
        assert_eq!(validate_td(&g, &td), Ok(()));
        assert_eq!(td.width(), 3);
    }

    #[test]
    fn disconnected_input_yields_one_tree() {
        let g = Digraph::new(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        for s in [Strategy::MinFill, Strategy::MinDegree] {
            let td = heuristic_td(&g, s);
            assert_eq!(validate_td(&g, &td), Ok(()));
        }
    }

    #[test]
    fn isolated_vertices_are_covered() {
        let g = Digraph::new(3, &[]).unwrap();
        let td = heuristic_td(&g, Strategy::MinDegree);
        assert_eq!(validate_td(&g, &td), Ok(()));
        assert_eq!(td.width(), 0);
    }
}
