//! Turning a Steiner tree into nearest-neighbour row operations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, RowOp};
use crate::graph::SteinerTree;

/// One edge-disjoint piece of a Steiner tree together with the row
/// operations that add its root row to each of its leaf rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subtree {
    pub root: usize,
    /// Terminals at the fringe of the piece.
    pub leaves: Vec<usize>,
    /// `(parent, child)` pairs.
    pub edges: Vec<(usize, usize)>,
    pub r: Vec<RowOp>,
    pub r_prime: Vec<RowOp>,
    pub r_star: Vec<RowOp>,
}

impl Subtree {
    /// `R + R' + R*`.
    pub fn ops(&self) -> impl Iterator<Item = RowOp> + '_ {
        self.r
            .iter()
            .chain(&self.r_prime)
            .chain(&self.r_star)
            .copied()
    }

    pub fn len(&self) -> usize {
        self.r.len() + self.r_prime.len() + self.r_star.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Row operations derived from a Steiner tree, grouped by the subtree that
/// produced them, in execution order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EliminationPlan {
    stages: Vec<Subtree>,
}

impl EliminationPlan {
    pub fn stages(&self) -> &[Subtree] {
        &self.stages
    }

    /// The full operation sequence.
    pub fn ops(&self) -> Vec<RowOp> {
        self.stages.iter().flat_map(|s| s.ops()).collect()
    }

    pub fn len(&self) -> usize {
        self.stages.iter().map(Subtree::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ops_r(&self) -> Vec<RowOp> {
        self.stages.iter().flat_map(|s| s.r.iter().copied()).collect()
    }

    pub fn ops_rprime(&self) -> Vec<RowOp> {
        self.stages.iter().flat_map(|s| s.r_prime.iter().copied()).collect()
    }

    pub fn ops_rstar(&self) -> Vec<RowOp> {
        self.stages.iter().flat_map(|s| s.r_star.iter().copied()).collect()
    }

    pub fn apply(&self, m: &mut BinaryMatrix) -> Result<()> {
        for op in self.ops() {
            m.row_op(op)?;
        }
        Ok(())
    }
}

/// Splits `t` into edge-disjoint pieces, each rooted at a terminal with only
/// terminals as leaves, in construction order (breadth first from the root).
/// Steiner nodes that end up as leaves are pruned first.
fn decompose(t: &SteinerTree) -> Vec<(usize, Vec<usize>, Vec<(usize, usize)>)> {
    let order = t.bfs_order(t.root());
    let mut children: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(v, p) in &order {
        children.entry(v).or_default();
        if let Some(p) = p {
            children.entry(p).or_default().push(v);
        }
    }
    let mut keep: BTreeSet<usize> = BTreeSet::new();
    for &(v, _) in order.iter().rev() {
        if t.is_terminal(v) || children[&v].iter().any(|c| keep.contains(c)) {
            keep.insert(v);
        }
    }
    for list in children.values_mut() {
        list.retain(|c| keep.contains(c));
    }

    let mut pieces = Vec::new();
    let mut roots = VecDeque::from([t.root()]);
    while let Some(r) = roots.pop_front() {
        let mut leaves = Vec::new();
        let mut edges = Vec::new();
        let mut queue = VecDeque::from([r]);
        while let Some(u) = queue.pop_front() {
            for &w in &children[&u] {
                edges.push((u, w));
                if t.is_terminal(w) {
                    leaves.push(w);
                    if !children[&w].is_empty() {
                        roots.push_back(w);
                    }
                } else {
                    queue.push_back(w);
                }
            }
        }
        if !edges.is_empty() {
            pieces.push((r, leaves, edges));
        }
    }
    pieces
}

fn build_subtree(root: usize, leaves: Vec<usize>, edges: Vec<(usize, usize)>) -> Subtree {
    let mut children: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(u, w) in &edges {
        children.entry(u).or_default().push(w);
    }
    for list in children.values_mut() {
        list.sort_unstable();
    }
    // Depth-first pre-order of the edges, then reversed.
    let mut preorder = Vec::with_capacity(edges.len());
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        if let Some(cs) = children.get(&u) {
            for &w in cs.iter().rev() {
                stack.push(w);
            }
        }
        if u != root {
            let parent = edges.iter().find(|e| e.1 == u).unwrap().0;
            preorder.push(RowOp::new(parent, u));
        }
    }
    let r: Vec<RowOp> = preorder.into_iter().rev().collect();
    let r_prime: Vec<RowOp> = r.iter().rev().copied().filter(|op| op.control != root).collect();
    let r_star: Vec<RowOp> = r
        .iter()
        .chain(&r_prime)
        .copied()
        .filter(|op| !leaves.contains(&op.target))
        .collect();
    Subtree {
        root,
        leaves,
        edges,
        r,
        r_prime,
        r_star,
    }
}

/// Plan for the elimination before the transpose. Each piece adds its root
/// row to its leaf rows. Pieces run from the last constructed to the first,
/// so a piece root still holds its original row when its own piece runs; if
/// all terminals share a 1 in some column, that column is cleared everywhere
/// but the root.
pub fn plan_pre_transpose(t: &SteinerTree) -> EliminationPlan {
    let stages = decompose(t)
        .into_iter()
        .rev()
        .map(|(r, l, e)| build_subtree(r, l, e))
        .collect();
    EliminationPlan { stages }
}

/// Plan for the elimination after the transpose. The root must be the
/// smallest terminal; the net effect adds the root row to every other
/// terminal and leaves all other rows as they were.
pub fn plan_post_transpose(t: &SteinerTree) -> Result<EliminationPlan> {
    let min = t.terminals()[0];
    if t.root() != min {
        return Err(Error::MalformedTree(format!(
            "root {} is not the smallest terminal {min}",
            t.root()
        )));
    }
    let pieces: Vec<Subtree> = decompose(t)
        .into_iter()
        .map(|(r, l, e)| build_subtree(r, l, e))
        .collect();
    let mut stages: Vec<Subtree> = pieces.iter().rev().cloned().collect();
    stages.extend(pieces.into_iter().filter(|p| p.root != min));
    Ok(EliminationPlan { stages })
}

/// Plan that adds the row at the head of `path` to the row at its tail,
/// restoring every row in between.
pub(crate) fn path_plan(path: &[usize]) -> EliminationPlan {
    let edges: Vec<(usize, usize)> = path.windows(2).map(|w| (w[0], w[1])).collect();
    if edges.is_empty() {
        return EliminationPlan::default();
    }
    let last = *path.last().unwrap();
    EliminationPlan {
        stages: vec![build_subtree(path[0], vec![last], edges)],
    }
}
