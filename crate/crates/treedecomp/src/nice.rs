use std::collections::BTreeSet;

use graph_core::Digraph;
use thiserror::Error;

use crate::td::{validate_td, TdViolation, TreeDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    IntroduceVertex(usize),
    /// Introduces the directed arc (tail, head). The underlying undirected
    /// edge becomes visible to the solver at this node only.
    IntroduceEdge(usize, usize),
    ForgetVertex(usize),
    Join,
}

#[derive(Debug, Clone)]
pub struct NiceNode {
    pub kind: NodeKind,
    /// Sorted vertex ids.
    pub bag: Vec<usize>,
    /// Node indices; empty for leaves, one entry except for joins.
    pub children: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
    root: usize,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &NiceNode {
        &self.nodes[i]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn width(&self) -> isize {
        self.nodes.iter().map(|t| t.bag.len() as isize - 1).max().unwrap_or(-1)
    }

    /// Children-before-parent order starting from the root, via an explicit
    /// stack so deep chains cannot overflow the call stack.
    pub fn postorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((t, expanded)) = stack.pop() {
            if expanded {
                order.push(t);
            } else {
                stack.push((t, true));
                for &c in &self.nodes[t].children {
                    stack.push((c, false));
                }
            }
        }
        order
    }
}

struct Builder<'a> {
    g: &'a Digraph,
    nodes: Vec<NiceNode>,
}

impl Builder<'_> {
    fn push(&mut self, kind: NodeKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Introduces `v` into the current bag and then introduces, in sorted
    /// order, every arc between `v` and a vertex already present. Placing
    /// each arc directly above the introduction of its later endpoint puts
    /// it on exactly one bag per root-to-leaf path and inside every join
    /// child subtree whose bag contains both endpoints.
    fn introduce(&mut self, mut top: usize, cur: &mut Vec<usize>, v: usize) -> usize {
        let pos = cur.binary_search(&v).unwrap_err();
        cur.insert(pos, v);
        top = self.push(NodeKind::IntroduceVertex(v), cur.clone(), vec![top]);
        let mut incident = Vec::new();
        for &u in cur.iter() {
            if u == v {
                continue;
            }
            if self.g.has_arc(u, v) {
                incident.push((u, v));
            }
            if self.g.has_arc(v, u) {
                incident.push((v, u));
            }
        }
        incident.sort_unstable();
        for (a, b) in incident {
            top = self.push(NodeKind::IntroduceEdge(a, b), cur.clone(), vec![top]);
        }
        top
    }

    fn forget(&mut self, top: usize, cur: &mut Vec<usize>, v: usize) -> usize {
        let pos = cur.binary_search(&v).expect("forgotten vertex is in the bag");
        cur.remove(pos);
        self.push(NodeKind::ForgetVertex(v), cur.clone(), vec![top])
    }

    /// Grows a chain from a fresh empty leaf up to `bag`.
    fn leaf_chain(&mut self, bag: &[usize]) -> usize {
        let mut top = self.push(NodeKind::Leaf, Vec::new(), Vec::new());
        let mut cur = Vec::new();
        for &v in bag {
            top = self.introduce(top, &mut cur, v);
        }
        top
    }

    /// Converts a subtree top with bag `from` into one with bag `to` by
    /// forgetting `from \ to` and then introducing `to \ from`, each in
    /// ascending order.
    fn transform(&mut self, mut top: usize, from: &[usize], to: &[usize]) -> usize {
        let mut cur = from.to_vec();
        for &v in from {
            if to.binary_search(&v).is_err() {
                top = self.forget(top, &mut cur, v);
            }
        }
        for &v in to {
            if from.binary_search(&v).is_err() {
                top = self.introduce(top, &mut cur, v);
            }
        }
        top
    }
}

/// Converts a valid tree decomposition into nice form with an empty root and
/// empty leaves. Multi-child bags become chains of binary joins; the width
/// never grows because every intermediate bag is a subset of an endpoint of
/// the transformed tree edge.
pub fn to_nice(td: &TreeDecomposition, g: &Digraph) -> Result<NiceTreeDecomposition, TdViolation> {
    validate_td(g, td)?;
    let mut b = Builder { g, nodes: Vec::new() };
    let k = td.bags().len();
    if k == 0 {
        let root = b.push(NodeKind::Leaf, Vec::new(), Vec::new());
        return Ok(NiceTreeDecomposition { nodes: b.nodes, root });
    }

    // root the bag tree at bag 0
    let mut adj = vec![Vec::new(); k];
    for &(x, y) in td.edges() {
        adj[x].push(y);
        adj[y].push(x);
    }
    let mut parent = vec![usize::MAX; k];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut order = Vec::with_capacity(k);
    let mut stack = vec![0usize];
    let mut seen = vec![false; k];
    seen[0] = true;
    while let Some(t) = stack.pop() {
        order.push(t);
        for &c in &adj[t] {
            if !seen[c] {
                seen[c] = true;
                parent[c] = t;
                children[t].push(c);
                stack.push(c);
            }
        }
    }

    let mut tops = vec![usize::MAX; k];
    for &t in order.iter().rev() {
        let bag = &td.bags()[t];
        tops[t] = if children[t].is_empty() {
            b.leaf_chain(bag)
        } else {
            let mut acc = usize::MAX;
            for &c in &children[t] {
                let shaped = b.transform(tops[c], &td.bags()[c], bag);
                acc = if acc == usize::MAX {
                    shaped
                } else {
                    b.push(NodeKind::Join, bag.clone(), vec![acc, shaped])
                };
            }
            acc
        };
    }

    let mut cur = td.bags()[0].clone();
    let mut top = tops[0];
    for &v in &td.bags()[0].clone() {
        top = b.forget(top, &mut cur, v);
    }
    Ok(NiceTreeDecomposition { nodes: b.nodes, root: top })
}

/// The one-bag-at-a-time fallback: introduce every vertex, then every arc
/// inside the full bag, then forget everything. Width is n - 1 regardless of
/// the graph, which keeps it honest as an independent cross-check.
pub fn naive_path_decomposition(g: &Digraph) -> NiceTreeDecomposition {
    let n = g.n();
    let mut nodes = Vec::with_capacity(2 * n + g.m() + 1);
    nodes.push(NiceNode { kind: NodeKind::Leaf, bag: Vec::new(), children: Vec::new() });
    let mut cur: Vec<usize> = Vec::new();
    for v in 0..n {
        cur.push(v);
        let child = nodes.len() - 1;
        nodes.push(NiceNode {
            kind: NodeKind::IntroduceVertex(v),
            bag: cur.clone(),
            children: vec![child],
        });
    }
    for &(u, v) in g.arcs() {
        let child = nodes.len() - 1;
        nodes.push(NiceNode {
            kind: NodeKind::IntroduceEdge(u, v),
            bag: cur.clone(),
            children: vec![child],
        });
    }
    for v in 0..n {
        cur.remove(0);
        let child = nodes.len() - 1;
        nodes.push(NiceNode {
            kind: NodeKind::ForgetVertex(v),
            bag: cur.clone(),
            children: vec![child],
        });
    }
    let root = nodes.len() - 1;
    NiceTreeDecomposition { nodes, root }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DisciplineViolation {
    #[error("node {node}: {msg}")]
    Structure { node: usize, msg: String },
    #[error("bags containing vertex {vertex} are not connected")]
    OccurrenceDisconnected { vertex: usize },
    #[error("arc ({tail}, {head}) is never introduced")]
    ArcNeverIntroduced { tail: usize, head: usize },
    #[error("arc ({tail}, {head}) is introduced twice on one root-to-leaf path")]
    ArcReintroducedOnPath { tail: usize, head: usize },
    #[error("vertex {vertex} is forgotten {count} times instead of once")]
    ForgetCount { vertex: usize, count: usize },
    #[error("an arc on vertex {vertex} is introduced outside the subtree under its forget node")]
    ArcAboveForget { vertex: usize },
    #[error("join node {node}: arc ({tail}, {head}) runs between the two child subtrees")]
    JoinCrossArc { node: usize, tail: usize, head: usize },
    #[error("join node {node}: bag arc ({tail}, {head}) is not introduced in both children")]
    JoinMissingIntroduction { node: usize, tail: usize, head: usize },
}

/// Checks the structural rules the dynamic program depends on, in a fixed
/// order, and reports the first violation:
///
/// 1. node structure and bag arithmetic (empty root and leaves, child
///    counts, exact bag deltas, arcs inside their bags);
/// 2. connected bag occurrences per vertex;
/// 3. every arc introduced somewhere, never twice on one root-to-leaf path;
/// 4. exactly one forget node per vertex, with all introductions of its arcs
///    strictly below;
/// 5. no arc between the private parts of a join (overlap beyond the bag is
///    already a disconnected occurrence) and every bag arc of a join
///    introduced in both subtrees.
pub fn validate_discipline(
    ntd: &NiceTreeDecomposition,
    g: &Digraph,
) -> Result<(), DisciplineViolation> {
    let nodes = ntd.nodes();
    let n = g.n();
    let fail = |node: usize, msg: &str| DisciplineViolation::Structure {
        node,
        msg: msg.to_string(),
    };

    // structure and bag arithmetic
    let mut parent_count = vec![0usize; nodes.len()];
    for (i, t) in nodes.iter().enumerate() {
        if t.bag.windows(2).any(|w| w[0] >= w[1]) {
            return Err(fail(i, "bag is not sorted strictly ascending"));
        }
        if t.bag.iter().any(|&v| v >= n) {
            return Err(fail(i, "bag contains a vertex outside the graph"));
        }
        for &c in &t.children {
            if c >= nodes.len() {
                return Err(fail(i, "child index out of range"));
            }
            parent_count[c] += 1;
        }
        let want = match t.kind {
            NodeKind::Leaf => 0,
            NodeKind::Join => 2,
            _ => 1,
        };
        if t.children.len() != want {
            return Err(fail(i, "wrong number of children for node kind"));
        }
        match t.kind {
            NodeKind::Leaf => {
                if !t.bag.is_empty() {
                    return Err(fail(i, "leaf bag is not empty"));
                }
            }
            NodeKind::IntroduceVertex(v) => {
                let child = &nodes[t.children[0]];
                let mut want_bag = child.bag.clone();
                match want_bag.binary_search(&v) {
                    Ok(_) => return Err(fail(i, "introduced vertex already in child bag")),
                    Err(pos) => want_bag.insert(pos, v),
                }
                if t.bag != want_bag {
                    return Err(fail(i, "bag is not the child bag plus the introduced vertex"));
                }
            }
            NodeKind::IntroduceEdge(u, v) => {
                let child = &nodes[t.children[0]];
                if t.bag != child.bag {
                    return Err(fail(i, "bag differs from child bag"));
                }
                if !g.has_arc(u, v) {
                    return Err(fail(i, "introduced arc is not in the graph"));
                }
                if t.bag.binary_search(&u).is_err() || t.bag.binary_search(&v).is_err() {
                    return Err(fail(i, "introduced arc endpoints are not both in the bag"));
                }
            }
            NodeKind::ForgetVertex(v) => {
                let child = &nodes[t.children[0]];
                let mut want_bag = child.bag.clone();
                match want_bag.binary_search(&v) {
                    Ok(pos) => {
                        want_bag.remove(pos);
                    }
                    Err(_) => return Err(fail(i, "forgotten vertex missing from child bag")),
                }
                if t.bag != want_bag {
                    return Err(fail(i, "bag is not the child bag minus the forgotten vertex"));
                }
            }
            NodeKind::Join => {
                if nodes[t.children[0]].bag != t.bag || nodes[t.children[1]].bag != t.bag {
                    return Err(fail(i, "join children bags differ from the join bag"));
                }
            }
        }
    }
    if ntd.root() >= nodes.len() {
        return Err(fail(0, "root index out of range"));
    }
    if !nodes[ntd.root()].bag.is_empty() {
        return Err(fail(ntd.root(), "root bag is not empty"));
    }
    for (i, &count) in parent_count.iter().enumerate() {
        if i == ntd.root() {
            if count != 0 {
                return Err(fail(i, "root has a parent"));
            }
        } else if count != 1 {
            return Err(fail(i, "node is not the child of exactly one parent"));
        }
    }
    let post = ntd.postorder();
    if post.len() != nodes.len() {
        return Err(fail(ntd.root(), "nodes unreachable from the root"));
    }

    // parent links and root-to-leaf ancestry intervals
    let mut parent = vec![usize::MAX; nodes.len()];
    for (i, t) in nodes.iter().enumerate() {
        for &c in &t.children {
            parent[c] = i;
        }
    }
    let mut tin = vec![0usize; nodes.len()];
    let mut tout = vec![0usize; nodes.len()];
    let mut depth = vec![0usize; nodes.len()];
    let mut clock = 0usize;
    let mut stack = vec![(ntd.root(), false)];
    while let Some((t, expanded)) = stack.pop() {
        if expanded {
            tout[t] = clock;
        } else {
            tin[t] = clock;
            clock += 1;
            stack.push((t, true));
            for &c in &nodes[t].children {
                depth[c] = depth[t] + 1;
                stack.push((c, false));
            }
        }
    }
    let is_ancestor =
        |a: usize, b: usize| tin[a] <= tin[b] && tout[b] <= tout[a];

    // connected occurrences: each vertex has one topmost holding bag
    let mut topmost = vec![0usize; n];
    let mut top_node = vec![usize::MAX; n];
    for (i, t) in nodes.iter().enumerate() {
        for &v in &t.bag {
            if i == ntd.root() || nodes[parent[i]].bag.binary_search(&v).is_err() {
                topmost[v] += 1;
                top_node[v] = i;
            }
        }
    }
    if let Some(v) = (0..n).find(|&v| topmost[v] > 1) {
        return Err(DisciplineViolation::OccurrenceDisconnected { vertex: v });
    }

    // arc introduction counts, globally and per path
    let arc_id = |u: usize, v: usize| g.arcs().binary_search(&(u, v)).expect("arc of g");
    let mut intro_nodes: Vec<Vec<usize>> = vec![Vec::new(); g.m()];
    for (i, t) in nodes.iter().enumerate() {
        if let NodeKind::IntroduceEdge(u, v) = t.kind {
            intro_nodes[arc_id(u, v)].push(i);
        }
    }
    for (id, &(u, v)) in g.arcs().iter().enumerate() {
        let sites = &intro_nodes[id];
        if sites.is_empty() {
            return Err(DisciplineViolation::ArcNeverIntroduced { tail: u, head: v });
        }
        for (i, &a) in sites.iter().enumerate() {
            for &b in &sites[i + 1..] {
                if is_ancestor(a, b) || is_ancestor(b, a) {
                    return Err(DisciplineViolation::ArcReintroducedOnPath { tail: u, head: v });
                }
            }
        }
    }

    // one forget per vertex, arc introductions strictly below it
    let mut forget_node = vec![Vec::new(); n];
    for (i, t) in nodes.iter().enumerate() {
        if let NodeKind::ForgetVertex(v) = t.kind {
            forget_node[v].push(i);
        }
    }
    for v in 0..n {
        if forget_node[v].len() != 1 {
            return Err(DisciplineViolation::ForgetCount { vertex: v, count: forget_node[v].len() });
        }
    }
    for (i, t) in nodes.iter().enumerate() {
        if let NodeKind::IntroduceEdge(a, b) = t.kind {
            for v in [a, b] {
                let f = forget_node[v][0];
                if !(is_ancestor(f, i) && f != i) {
                    return Err(DisciplineViolation::ArcAboveForget { vertex: v });
                }
            }
        }
    }

    // join separation: an arc between the private sides of a join would
    // have both topmost occurrences strictly below the join in different
    // branches. With occurrences connected that can only happen where the
    // two topmost bags meet, so one lowest-common-ancestor test per arc
    // covers every join.
    let lca = |a: usize, b: usize| {
        let (mut a, mut b) = (a, b);
        while depth[a] > depth[b] {
            a = parent[a];
        }
        while depth[b] > depth[a] {
            b = parent[b];
        }
        while a != b {
            a = parent[a];
            b = parent[b];
        }
        a
    };
    for &(u, v) in g.arcs() {
        let (a, b) = (top_node[u], top_node[v]);
        let meet = lca(a, b);
        if meet != a && meet != b && nodes[meet].kind == NodeKind::Join {
            return Err(DisciplineViolation::JoinCrossArc { node: meet, tail: u, head: v });
        }
    }

    // every bag arc of a join is introduced in both child subtrees
    for (i, t) in nodes.iter().enumerate() {
        if t.kind != NodeKind::Join {
            continue;
        }
        let (l, r) = (t.children[0], t.children[1]);
        for &u in &t.bag {
            for &v in &t.bag {
                let Ok(id) = g.arcs().binary_search(&(u, v)) else { continue };
                let both = [l, r]
                    .iter()
                    .all(|&side| intro_nodes[id].iter().any(|&s| is_ancestor(side, s)));
                if !both {
                    return Err(DisciplineViolation::JoinMissingIntroduction {
                        node: i,
                        tail: u,
                        head: v,
                    });
                }
            }
        }
    }
    Ok(())
}

/// The subgraph a subtree has fully processed: all vertices seen in bags at
/// or below `node` and all arcs introduced there, relabeled to dense local
/// ids. Returns the graph and the local-to-global vertex map.
pub fn processed_subgraph(ntd: &NiceTreeDecomposition, node: usize) -> (Digraph, Vec<usize>) {
    let mut verts = BTreeSet::new();
    let mut arcs = BTreeSet::new();
    let mut stack = vec![node];
    while let Some(t) = stack.pop() {
        let nd = ntd.node(t);
        verts.extend(nd.bag.iter().copied());
        if let NodeKind::IntroduceEdge(u, v) = nd.kind {
            arcs.insert((u, v));
        }
        stack.extend(nd.children.iter().copied());
    }
    let map: Vec<usize> = verts.into_iter().collect();
    let local = |v: usize| map.binary_search(&v).expect("endpoint of an introduced arc is in some bag");
    let local_arcs: Vec<(usize, usize)> = arcs.into_iter().map(|(u, v)| (local(u), local(v))).collect();
    let g = Digraph::new(map.len(), &local_arcs).expect("introduced arcs are loop-free and unique");
    (g, map)
}
