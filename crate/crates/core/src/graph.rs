//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Distance reported for vertices that cannot be reached.
pub const UNREACHABLE: usize = usize::MAX;

/// A simple undirected graph with sorted adjacency lists.
///
/// Construction rejects self-loops, duplicate edges and out-of-range
/// endpoints, so every `Graph` is symmetric and loop-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::input("a graph needs at least one vertex"));
        }
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::input(format!("duplicate edge {u}-{}", w[0])));
            }
        }
        Ok(Graph { adj })
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        Self::from_edges(n, std::iter::empty())
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Self> {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn is_connected(&self) -> bool {
        bfs_unchecked(self, 0).iter().all(|&d| d != UNREACHABLE)
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Subgraph induced by `keep`, relabelled in ascending order of old id.
    pub fn induced(&self, keep: &[usize]) -> Result<(Graph, Relabeling)> {
        let map = Relabeling::keeping(self.n(), keep)?;
        let mut edges = Vec::new();
        for (new_u, &old_u) in map.new_to_old.iter().enumerate() {
            for &old_v in &self.adj[old_u] {
                if let Some(new_v) = map.old_to_new[old_v] {
                    if new_u < new_v {
                        edges.push((new_u, new_v));
                    }
                }
            }
        }
        Ok((Graph::from_edges(map.new_len(), edges)?, map))
    }
}

/// An old→new vertex relabelling produced when vertices are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    old_to_new: Vec<Option<usize>>,
    new_to_old: Vec<usize>,
}

impl Relabeling {
    /// Keeps the listed vertices (any order, no duplicates) and compacts ids ascending.
    pub fn keeping(old_len: usize, keep: &[usize]) -> Result<Self> {
        let mut mark = vec![false; old_len];
        for &v in keep {
            if v >= old_len {
                return Err(Error::VertexOutOfRange { vertex: v, n: old_len });
            }
            if mark[v] {
                return Err(Error::input(format!("vertex {v} listed twice")));
            }
            mark[v] = true;
        }
        let mut old_to_new = vec![None; old_len];
        let mut new_to_old = Vec::with_capacity(keep.len());
        for (v, _) in mark.iter().enumerate().filter(|(_, &m)| m) {
            old_to_new[v] = Some(new_to_old.len());
            new_to_old.push(v);
        }
        Ok(Relabeling { old_to_new, new_to_old })
    }

    pub fn old_len(&self) -> usize {
        self.old_to_new.len()
    }

    pub fn new_len(&self) -> usize {
        self.new_to_old.len()
    }

    /// New id of an old vertex, `None` if it was removed.
    pub fn to_new(&self, old: usize) -> Option<usize> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn to_old(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    pub fn new_to_old(&self) -> &[usize] {
        &self.new_to_old
    }
}

fn bfs_unchecked(g: &Graph, src: usize) -> Vec<usize> {
    bfs_bounded(g, src, usize::MAX)
}

/// BFS distances from `src`, stopping at depth `limit`.
fn bfs_bounded(g: &Graph, src: usize, limit: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = VecDeque::new();
    dist[src] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        if dist[u] == limit {
            continue;
        }
        for &v in g.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Hop distances from `src`; unreachable vertices get [`UNREACHABLE`].
pub fn bfs_distances(g: &Graph, src: usize) -> Result<Vec<usize>> {
    g.check_vertex(src)?;
    Ok(bfs_unchecked(g, src))
}

/// Breadth-first spanning tree rooted at `root`, visiting neighbours in ascending order.
pub fn bfs_tree_edges(g: &Graph, root: usize) -> Result<Vec<(usize, usize)>> {
    g.check_vertex(root)?;
    let mut seen = vec![false; g.n()];
    let mut queue = VecDeque::from([root]);
    let mut edges = Vec::with_capacity(g.n().saturating_sub(1));
    seen[root] = true;
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                edges.push((u, v));
                queue.push_back(v);
            }
        }
    }
    if edges.len() + 1 != g.n() {
        return Err(Error::Disconnected);
    }
    Ok(edges)
}

pub fn eccentricity(g: &Graph, v: usize) -> Result<usize> {
    let dist = bfs_distances(g, v)?;
    let ecc = dist.iter().copied().max().unwrap_or(0);
    if ecc == UNREACHABLE {
        return Err(Error::Disconnected);
    }
    Ok(ecc)
}

/// Eccentricity of every vertex.
pub fn eccentricities(g: &Graph) -> Result<Vec<usize>> {
    (0..g.n()).map(|v| eccentricity(g, v)).collect()
}

pub fn radius(g: &Graph) -> Result<usize> {
    Ok(eccentricities(g)?.into_iter().min().unwrap_or(0))
}

pub fn diameter(g: &Graph) -> Result<usize> {
    Ok(eccentricities(g)?.into_iter().max().unwrap_or(0))
}

/// Smallest-id vertex of minimum eccentricity.
pub fn center(g: &Graph) -> Result<usize> {
    let ecc = eccentricities(g)?;
    let best = ecc.iter().copied().min().unwrap_or(0);
    Ok(ecc.iter().position(|&e| e == best).unwrap_or(0))
}

/// The `k`-th power: same vertices, an edge between every pair at distance `1..=k`.
pub fn graph_power(g: &Graph, k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::input("graph power exponent must be at least 1"));
    }
    g.require_connected()?;
    let mut edges = Vec::new();
    for u in 0..g.n() {
        let dist = bfs_bounded(g, u, k);
        edges.extend(
            dist.iter()
                .enumerate()
                .filter(|&(v, &d)| v > u && d != UNREACHABLE)
                .map(|(v, _)| (u, v)),
        );
    }
    Graph::from_edges(g.n(), edges)
}

/// Closed ball `N_r[v]` as a sorted vertex list.
pub fn ball(g: &Graph, v: usize, r: usize) -> Result<Vec<usize>> {
    g.check_vertex(v)?;
    let dist = bfs_bounded(g, v, r);
    Ok((0..g.n()).filter(|&u| dist[u] != UNREACHABLE).collect())
}
