//! Steiner trees on unit-weight graphs.

use std::collections::{BTreeSet, VecDeque};

use super::ConnectivityGraph;
use crate::error::{Error, Result};

/// Exact search is only attempted on graphs with at most this many nodes,
/// or with at most [`EXACT_MAX_TERMINALS`] terminals.
pub const EXACT_MAX_NODES: usize = 14;
pub const EXACT_MAX_TERMINALS: usize = 6;

/// A tree in a host graph spanning a terminal set, with a distinguished root
/// terminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerTree {
    terminals: Vec<usize>,
    root: usize,
    edges: Vec<(usize, usize)>,
    nodes: Vec<usize>,
}

impl SteinerTree {
    /// Builds and validates a tree against `g`. `root` must be a terminal.
    pub fn new(
        g: &ConnectivityGraph,
        terminals: &[usize],
        root: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let terminals: Vec<usize> = terminals.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut nodes: BTreeSet<usize> = terminals.iter().copied().collect();
        for &(u, v) in &edges {
            nodes.insert(u);
            nodes.insert(v);
        }
        let t = SteinerTree {
            terminals,
            root,
            edges,
            nodes: nodes.into_iter().collect(),
        };
        t.validate(g)?;
        Ok(t)
    }

    /// Checks the structural invariants against the host graph.
    pub fn validate(&self, g: &ConnectivityGraph) -> Result<()> {
        if self.terminals.is_empty() {
            return Err(Error::EmptyTerminals);
        }
        if self.terminals.binary_search(&self.root).is_err() {
            return Err(Error::MalformedTree(format!("root {} is not a terminal", self.root)));
        }
        for &v in &self.nodes {
            if v >= g.node_count() {
                return Err(Error::UnknownNode {
                    node: v,
                    nodes: g.node_count(),
                });
            }
        }
        if let Some(&(u, v)) = self.edges.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
            return Err(Error::MalformedTree(format!("({u}, {v}) is not a graph edge")));
        }
        if self.edges.len() + 1 != self.nodes.len() {
            return Err(Error::MalformedTree(format!(
                "{} edges on {} nodes",
                self.edges.len(),
                self.nodes.len()
            )));
        }
        // With |E| = |V| - 1, connectivity implies acyclicity.
        let reached = self.bfs_order(self.root).len();
        if reached != self.nodes.len() {
            return Err(Error::MalformedTree("tree is not connected".into()));
        }
        Ok(())
    }

    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        self.terminals.binary_search(&v).is_ok()
    }

    pub fn steiner_nodes(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .copied()
            .filter(|&v| !self.is_terminal(v))
            .collect()
    }

    /// Number of edges.
    pub fn weight(&self) -> usize {
        self.edges.len()
    }

    /// The same tree with a different root terminal.
    pub fn rerooted(&self, root: usize) -> Result<Self> {
        if !self.is_terminal(root) {
            return Err(Error::MalformedTree(format!("root {root} is not a terminal")));
        }
        Ok(SteinerTree {
            root,
            ..self.clone()
        })
    }

    /// Neighbours of `v` inside the tree, ascending.
    pub fn tree_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Tree nodes in BFS order from `start`, children visited in ascending
    /// index order, paired with their parent.
    pub fn bfs_order(&self, start: usize) -> Vec<(usize, Option<usize>)> {
        let mut seen = BTreeSet::from([start]);
        let mut order = vec![(start, None)];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for w in self.tree_neighbors(u) {
                if seen.insert(w) {
                    order.push((w, Some(u)));
                    queue.push_back(w);
                }
            }
        }
        order
    }
}

fn check_terminals(g: &ConnectivityGraph, terminals: &[usize]) -> Result<Vec<usize>> {
    if terminals.is_empty() {
        return Err(Error::EmptyTerminals);
    }
    for &t in terminals {
        g.check_node(t)?;
    }
    Ok(terminals.iter().copied().collect::<BTreeSet<_>>().into_iter().collect())
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    // Smallest original index represents the merged node.
    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
    parent[hi] = lo;
}

/// Approximate Steiner tree by repeated multi-source BFS.
///
/// Every terminal starts as its own component. Each round grows BFS waves out
/// of all components at once; the cheapest place where two waves meet yields
/// a shortest path between the two closest components. The nodes on that
/// path are merged with both components into one node, which takes part in
/// the next round as a single terminal. Rounds stop when one component is
/// left. Ties go to the lowest node index. The root is the smallest terminal.
pub fn steiner_approx(g: &ConnectivityGraph, terminals: &[usize]) -> Result<SteinerTree> {
    let terminals = check_terminals(g, terminals)?;
    let n = g.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut in_tree = vec![false; n];
    for &t in &terminals {
        in_tree[t] = true;
    }
    let mut components = terminals.len();
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();

    let mut dist = vec![usize::MAX; n];
    let mut label = vec![usize::MAX; n];
    let mut pred = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);

    while components > 1 {
        dist.fill(usize::MAX);
        label.fill(usize::MAX);
        pred.fill(usize::MAX);
        queue.clear();
        for v in 0..n {
            if in_tree[v] {
                dist[v] = 0;
                label[v] = find(&mut parent, v);
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    label[w] = label[u];
                    pred[w] = u;
                    queue.push_back(w);
                }
            }
        }

        let mut best: Option<(usize, usize, usize)> = None;
        for (u, v) in g.edges() {
            if label[u] == label[v] {
                continue;
            }
            let cost = dist[u] + dist[v] + 1;
            if best.is_none_or(|(c, _, _)| cost < c) {
                best = Some((cost, u, v));
            }
        }
        let (_, u, v) = best.ok_or(Error::Disconnected)?;

        tree_edges.push((u, v));
        for end in [u, v] {
            let mut x = end;
            while dist[x] > 0 {
                let p = pred[x];
                tree_edges.push((p, x));
                in_tree[x] = true;
                x = p;
            }
        }
        let (lu, lv) = (label[u], label[v]);
        union(&mut parent, lu, lv);
        let rep = find(&mut parent, lu);
        for end in [u, v] {
            let mut x = end;
            while dist[x] > 0 {
                union(&mut parent, x, rep);
                x = pred[x];
            }
        }
        components -= 1;
    }

    let root = terminals[0];
    SteinerTree::new(g, &terminals, root, tree_edges)
}

/// Minimum Steiner tree by Dreyfus-Wagner dynamic programming.
///
/// Restricted to graphs with at most [`EXACT_MAX_NODES`] nodes or at most
/// [`EXACT_MAX_TERMINALS`] terminals.
pub fn steiner_exact(g: &ConnectivityGraph, terminals: &[usize]) -> Result<SteinerTree> {
    let terminals = check_terminals(g, terminals)?;
    let n = g.node_count();
    let k = terminals.len();
    if n > EXACT_MAX_NODES && k > EXACT_MAX_TERMINALS {
        return Err(Error::InstanceTooLarge {
            nodes: n,
            terminals: k,
        });
    }
    if k == 1 {
        return SteinerTree::new(g, &terminals, terminals[0], []);
    }
    let dist: Vec<Vec<usize>> = (0..n)
        .map(|s| g.distances_from(s).into_iter().map(|d| d.unwrap()).collect())
        .collect();

    const INF: usize = usize::MAX / 4;
    let full = (1usize << k) - 1;
    // cost[mask][v]: lightest tree spanning the terminals in `mask` plus v.
    let mut cost = vec![vec![INF; n]; full + 1];
    // split[mask][v]: best submask when the tree branches at v.
    let mut split = vec![vec![0usize; n]; full + 1];
    // via[mask][v]: branching node joined to v by a shortest path.
    let mut via = vec![vec![0usize; n]; full + 1];
    for (i, &t) in terminals.iter().enumerate() {
        for v in 0..n {
            cost[1 << i][v] = dist[t][v];
            via[1 << i][v] = t;
        }
    }
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        let low = mask & mask.wrapping_neg();
        let mut branch = vec![INF; n];
        for u in 0..n {
            let mut sub = (mask - 1) & mask;
            while sub > 0 {
                if sub & low != 0 {
                    let c = cost[sub][u] + cost[mask ^ sub][u];
                    if c < branch[u] {
                        branch[u] = c;
                        split[mask][u] = sub;
                    }
                }
                sub = (sub - 1) & mask;
            }
        }
        for v in 0..n {
            let (best_u, best) = (0..n)
                .map(|u| (u, branch[u] + dist[u][v]))
                .min_by_key(|&(u, c)| (c, u))
                .unwrap();
            cost[mask][v] = best;
            via[mask][v] = best_u;
        }
    }

    let mut edges = BTreeSet::new();
    let add_path = |a: usize, b: usize, edges: &mut BTreeSet<(usize, usize)>| {
        let p = g.shortest_path(a, b).expect("nodes are valid");
        for w in p.windows(2) {
            edges.insert(if w[0] < w[1] { (w[0], w[1]) } else { (w[1], w[0]) });
        }
    };
    let mut stack = vec![(full, terminals[0])];
    while let Some((mask, v)) = stack.pop() {
        let u = via[mask][v];
        add_path(u, v, &mut edges);
        if mask.count_ones() >= 2 {
            let sub = split[mask][u];
            stack.push((sub, u));
            stack.push((mask ^ sub, u));
        }
    }
    let tree = SteinerTree::new(g, &terminals, terminals[0], edges)?;
    debug_assert_eq!(tree.weight(), cost[full][terminals[0]]);
    Ok(tree)
}
