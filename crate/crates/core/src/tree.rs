//! Trees certified connected and acyclic, plus the tree surgery used by the
//! constructive procedures (edge contraction, bridge sides, induced subtrees).

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, Relabeling};

/// A connected graph with exactly `n - 1` edges.
///
/// A vertex of degree at most one is a leaf (this makes the single-vertex
/// tree consist of one leaf); every other vertex is internal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tree {
    graph: Graph,
}

impl Tree {
    pub fn new(graph: Graph) -> Result<Self> {
        if graph.edge_count() + 1 != graph.n() {
            return Err(Error::input(format!(
                "a tree on {} vertices needs {} edges, got {}",
                graph.n(),
                graph.n() - 1,
                graph.edge_count()
            )));
        }
        graph.require_connected()?;
        Ok(Tree { graph })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Tree::new(Graph::from_edges(n, edges)?)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph.degree(v)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        self.graph.neighbors(v)
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) <= 1
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn internal_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| !self.is_leaf(v)).collect()
    }

    pub fn leaf_count(&self) -> usize {
        (0..self.n()).filter(|&v| self.is_leaf(v)).count()
    }

    pub fn internal_count(&self) -> usize {
        self.n() - self.leaf_count()
    }

    /// True when every internal vertex has degree at least `k`.
    pub fn is_k_branching(&self, k: usize) -> bool {
        (0..self.n()).all(|v| self.is_leaf(v) || self.degree(v) >= k)
    }

    /// Internal vertices whose degree is below `k`.
    pub fn branching_violations(&self, k: usize) -> Vec<usize> {
        (0..self.n())
            .filter(|&v| !self.is_leaf(v) && self.degree(v) < k)
            .collect()
    }

    /// The largest `k` for which the tree is k⁺-branching (`None` when it has
    /// no internal vertex, i.e. every `k` works).
    pub fn branching_degree(&self) -> Option<usize> {
        self.internal_vertices().into_iter().map(|v| self.degree(v)).min()
    }

    fn require_edge(&self, u: usize, v: usize) -> Result<()> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertex(v)?;
        if self.graph.has_edge(u, v) {
            Ok(())
        } else {
            Err(Error::NotAnEdge(u, v))
        }
    }

    /// Vertex set of the component containing `x` once the edge `xy` is removed.
    pub fn component_on_edge_removal(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        self.require_edge(x, y)?;
        let mut seen = vec![false; self.n()];
        seen[x] = true;
        seen[y] = true;
        let mut queue = VecDeque::from([x]);
        let mut side = vec![x];
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    side.push(w);
                    queue.push_back(w);
                }
            }
        }
        side.sort_unstable();
        Ok(side)
    }

    /// Contracts `yz` into `z`: `y` is deleted and its other neighbours are
    /// re-attached to `z`. Ids are compacted; the map sends `y` to `None`.
    pub fn contract_edge(&self, y: usize, z: usize) -> Result<(Tree, Relabeling)> {
        self.require_edge(y, z)?;
        let keep: Vec<usize> = (0..self.n()).filter(|&v| v != y).collect();
        let map = Relabeling::keeping(self.n(), &keep)?;
        let new = |v: usize| map.to_new(v).expect("kept vertex");
        let mut edges = Vec::with_capacity(self.n().saturating_sub(2));
        for (u, v) in self.graph.edges() {
            match (u == y, v == y) {
                (false, false) => edges.push((new(u), new(v))),
                (true, _) if v != z => edges.push((new(z), new(v))),
                (_, true) if u != z => edges.push((new(z), new(u))),
                _ => {}
            }
        }
        Ok((Tree::from_edges(map.new_len(), edges)?, map))
    }

    /// Subtree induced by a connected vertex set.
    pub fn induced_subtree(&self, keep: &[usize]) -> Result<(Tree, Relabeling)> {
        let (g, map) = self.graph.induced(keep)?;
        Ok((Tree::new(g)?, map))
    }

    /// Parent pointers and subtree sizes for the tree rooted at `root`,
    /// plus the vertices in BFS order from the root.
    pub fn rooted(&self, root: usize) -> Result<Rooted> {
        self.graph.check_vertex(root)?;
        let n = self.n();
        let mut parent = vec![None; n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in self.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        let mut size = vec![1usize; n];
        for &u in order.iter().rev() {
            if let Some(p) = parent[u] {
                size[p] += size[u];
            }
        }
        Ok(Rooted { root, parent, size, order })
    }
}

/// A tree hung from a root.
#[derive(Clone, Debug)]
pub struct Rooted {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    /// Number of vertices in the subtree below (and including) each vertex.
    pub size: Vec<usize>,
    pub order: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{path, spider, star};

    pub(crate) fn nine_vertex_example() -> Tree {
        Tree::from_edges(9, [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (5, 6), (5, 7), (7, 8)]).unwrap()
    }

    #[test]
    fn certification() {
        assert!(Tree::new(Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()).is_err());
        assert_eq!(
            Tree::new(Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()).unwrap_err(),
            Error::input("a tree on 4 vertices needs 3 edges, got 2")
        );
        assert!(Tree::new(Graph::empty(1).unwrap()).is_ok());
    }

    #[test]
    fn branching_predicate() {
        assert!(star(6).unwrap().is_k_branching(5));
        assert!(!path(4).unwrap().is_k_branching(3));
        let t = nine_vertex_example();
        assert!(!t.is_k_branching(3));
        assert_eq!(t.branching_violations(3), vec![7]);
        assert_eq!(t.internal_vertices(), vec![2, 3, 5, 7]);
        assert_eq!(t.leaf_count() + t.internal_count(), 9);
        assert!(Tree::new(Graph::empty(1).unwrap()).unwrap().is_k_branching(100));
    }

    #[test]
    fn bridge_sides() {
        let p = path(4).unwrap();
        assert_eq!(p.component_on_edge_removal(1, 2).unwrap(), vec![0, 1]);
        assert_eq!(p.component_on_edge_removal(0, 2), Err(Error::NotAnEdge(0, 2)));
        let t = nine_vertex_example();
        assert_eq!(t.component_on_edge_removal(3, 5).unwrap(), vec![0, 1, 2, 3, 4]);
        let s = star(7).unwrap();
        assert_eq!(s.component_on_edge_removal(0, 3).unwrap().len(), 6);
    }

    #[test]
    fn contraction_examples() {
        let (t, map) = path(3).unwrap().contract_edge(1, 2).unwrap();
        assert_eq!(t.n(), 2);
        assert_eq!(t.graph().edges(), vec![(0, 1)]);
        assert_eq!(map.to_new(1), None);
        assert_eq!(map.to_new(2), Some(1));

        let (t, _) = star(6).unwrap().contract_edge(4, 0).unwrap();
        assert_eq!(t.n(), 5);
        assert_eq!(t.degree(0), 4);

        // spider with three legs of length two: 0 - (1,2), (3,4), (5,6)
        let sp = spider(3, 2).unwrap();
        let (t, map) = sp.contract_edge(1, 0).unwrap();
        let leaf = map.to_new(2).unwrap();
        assert!(t.graph().has_edge(map.to_new(0).unwrap(), leaf));
        assert_eq!(t.degree(map.to_new(0).unwrap()), 3);
        assert!(sp.contract_edge(1, 3).is_err());
    }

    #[test]
    fn rooted_sizes() {
        let t = nine_vertex_example();
        let r = t.rooted(0).unwrap();
        assert_eq!(r.size[0], 9);
        assert_eq!(r.size[3], 6);
        assert_eq!(r.size[5], 4);
        assert_eq!(r.parent[2], Some(0));
    }
}
