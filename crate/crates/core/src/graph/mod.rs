//! Undirected unit-weight coupling graphs.

mod arch;
mod steiner;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{parse_err, Error, Result};

pub use arch::{builtin_architecture, Architecture, ARCHITECTURE_NAMES};
pub use steiner::{steiner_approx, steiner_exact, SteinerTree, EXACT_MAX_NODES, EXACT_MAX_TERMINALS};

/// A connected, simple, undirected graph on nodes `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct ConnectivityGraph {
    name: String,
    adj: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl ConnectivityGraph {
    pub fn new(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= node_count {
                    return Err(Error::UnknownNode {
                        node: w,
                        nodes: node_count,
                    });
                }
            }
            if u == v {
                return Err(Error::Config(format!("self-loop on node {u}")));
            }
            if !set.insert(norm(u, v)) {
                return Err(Error::Config(format!("duplicate edge ({u}, {v})")));
            }
        }
        let g = Self::from_edge_set(node_count, set);
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    fn from_edge_set(node_count: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); node_count];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Self {
            name: String::new(),
            adj,
            edges,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn line(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i)))
            .expect("line graph is connected")
            .with_name(format!("line{n}"))
    }

    pub fn grid(rows: usize, cols: usize) -> Self {
        let id = |r: usize, c: usize| r * cols + c;
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    edges.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < rows {
                    edges.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        Self::new(rows * cols, edges)
            .expect("grid graph is connected")
            .with_name(format!("grid{rows}x{cols}"))
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("complete graph is connected")
            .with_name(format!("complete{n}"))
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&norm(u, v))
    }

    /// Neighbours in ascending order.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        n == 0 || self.distances_from(0).iter().all(|d| d.is_some())
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node >= self.node_count() {
            Err(Error::UnknownNode {
                node,
                nodes: self.node_count(),
            })
        } else {
            Ok(())
        }
    }

    /// BFS hop counts from `src`.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, a: usize, b: usize) -> Result<usize> {
        self.check_node(a)?;
        self.check_node(b)?;
        self.distances_from(b)[a].ok_or(Error::Disconnected)
    }

    /// A minimum-hop path from `a` to `b`, both inclusive. Among all shortest
    /// paths the one that is lexicographically smallest read from `a` is
    /// returned, so the result does not depend on traversal details.
    pub fn shortest_path(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        self.check_node(a)?;
        self.check_node(b)?;
        let dist = self.distances_from(b);
        let mut d = dist[a].ok_or(Error::Disconnected)?;
        let mut path = vec![a];
        let mut cur = a;
        while d > 0 {
            cur = *self.adj[cur]
                .iter()
                .find(|&&w| dist[w] == Some(d - 1))
                .expect("BFS layers are consistent");
            path.push(cur);
            d -= 1;
        }
        Ok(path)
    }

    /// Graph where each pair is joined independently with probability
    /// `sparseness`, resampled until connected.
    pub fn random_connected(n: usize, sparseness: f64, seed: u64) -> Result<Self> {
        const CAP: usize = 10_000;
        if n < 2 {
            return Err(Error::Config("random graphs need at least 2 nodes".into()));
        }
        if !(sparseness > 0.0 && sparseness <= 1.0) {
            return Err(Error::Config(format!(
                "sparseness must lie in (0, 1], got {sparseness}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..CAP {
            let mut set = BTreeSet::new();
            for u in 0..n {
                for v in u + 1..n {
                    if sparseness >= 1.0 || rng.gen::<f64>() < sparseness {
                        set.insert((u, v));
                    }
                }
            }
            let g = Self::from_edge_set(n, set);
            if g.is_connected() {
                return Ok(g.with_name(format!("random{n}_p{sparseness}_s{seed}")));
            }
        }
        Err(Error::RetryCap {
            attempts: CAP,
            what: "sampling a connected random graph",
        })
    }

    /// Text form: `n m`, then `m` lines `u v`. Lines starting with `#` are
    /// comments.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if !self.name.is_empty() {
            s.push_str(&format!("# {}\n", self.name));
        }
        s.push_str(&format!("{} {}\n", self.node_count(), self.edge_count()));
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| parse_err(line_no, format!("expected two integers, found `{line}`")))?;
            if nums.len() != 2 {
                return Err(parse_err(line_no, format!("expected two integers, found `{line}`")));
            }
            if header.is_none() {
                header = Some((nums[0], nums[1]));
            } else {
                edges.push((nums[0], nums[1]));
            }
        }
        let (n, m) = header.ok_or_else(|| parse_err(1, "missing `n m` header"))?;
        if edges.len() != m {
            return Err(parse_err(
                text.lines().count(),
                format!("header announces {m} edges, found {}", edges.len()),
            ));
        }
        Self::new(n, edges)
    }
}

impl fmt::Debug for ConnectivityGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ConnectivityGraph({:?}, n={}, edges={:?})",
            self.name,
            self.node_count(),
            self.edges
        )
    }
}
