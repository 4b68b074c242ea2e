//! Burning graph powers through high-branching spanning trees.
//!
//! A tree `T` with `k <= diam(T) - 1` has a (k+1)⁺-branching spanning tree
//! inside `T^k`. [`extract_branching_spanning_tree`] builds it by peeling:
//! while `rad > k`, take a split vertex `x` for threshold `k`, remove
//! everything hanging off `x` away from the large side (all within `k` of
//! `x`, and at least `k` vertices), and later hang the removed vertices
//! directly off `x`. The final small-radius tree becomes a star.

use std::collections::{HashMap, HashSet};

use num_rational::Ratio;
use serde::Serialize;

use crate::bounds::power_bound;
use crate::burn::realize;
use crate::decomp::find_split_vertex;
use crate::error::{Error, Result};
use crate::graph::{bfs_distances, bfs_tree_edges, center, diameter, eccentricity, graph_power, radius, Graph};
use crate::schedule::{burn_branching_tree, BoundKind, ScheduleCertificate};
use crate::tree::Tree;

/// One peeling step; ids refer to the input tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeelLevel {
    pub x: usize,
    /// Sorted.
    pub removed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeelingLog {
    pub levels: Vec<PeelLevel>,
    pub star_center: usize,
}

impl PeelingLog {
    /// Checks the level invariants against the input tree: every level
    /// removes at least `k` vertices, all within distance `k` of its `x`
    /// in the tree left by the previous levels.
    pub fn verify(&self, t: &Tree, k: usize) -> Result<()> {
        let mut alive = vec![true; t.n()];
        for level in &self.levels {
            if level.removed.len() < k {
                return Err(Error::defect(format!(
                    "level at {} removed {} < {k} vertices",
                    level.x,
                    level.removed.len()
                )));
            }
            let keep: Vec<usize> = (0..t.n()).filter(|&v| alive[v]).collect();
            let (current, map) = t.induced_subtree(&keep)?;
            let x = map.to_new(level.x).ok_or_else(|| Error::defect("peeling centre already removed"))?;
            let dist = bfs_distances(current.graph(), x)?;
            for &v in &level.removed {
                match map.to_new(v) {
                    Some(w) if dist[w] <= k => alive[v] = false,
                    _ => return Err(Error::defect(format!("vertex {v} is not within {k} of {}", level.x))),
                }
            }
        }
        Ok(())
    }
}

/// A (k+1)⁺-branching spanning tree `S` of `T^k`, for `1 <= k <= diam(T) - 1`.
pub fn extract_branching_spanning_tree(t: &Tree, k: usize) -> Result<(Tree, PeelingLog)> {
    if k < 1 {
        return Err(Error::input("k must be at least 1"));
    }
    let diam = diameter(t.graph())?;
    if k >= diam {
        return Err(Error::domain(format!(
            "k = {k} >= diam = {diam}: the k-th power is complete, burn it as a star"
        )));
    }

    // ids[v] is the input-tree id of vertex v in the current tree
    let mut current = t.clone();
    let mut ids: Vec<usize> = (0..t.n()).collect();
    let mut levels = Vec::new();
    while radius(current.graph())? > k {
        let n = current.n();
        if n < 3 || k + 1 >= n {
            return Err(Error::defect(format!("peeling reached {n} vertices with radius above {k}")));
        }
        let cert = find_split_vertex(&current, Ratio::from_integer(k as u64))?;
        let (x, vm) = (cert.x, cert.large_neighbor());
        let mut removed = current.component_on_edge_removal(x, vm)?;
        removed.retain(|&v| v != x);
        if removed.len() < k {
            return Err(Error::defect(format!("peeling at {} removed only {} vertices", ids[x], removed.len())));
        }
        let mut gone = vec![false; n];
        removed.iter().for_each(|&v| gone[v] = true);
        let keep: Vec<usize> = (0..n).filter(|&v| !gone[v]).collect();
        let mut removed_ids: Vec<usize> = removed.iter().map(|&v| ids[v]).collect();
        removed_ids.sort_unstable();
        levels.push(PeelLevel { x: ids[x], removed: removed_ids });
        let (next, map) = current.induced_subtree(&keep)?;
        ids = map.new_to_old().iter().map(|&v| ids[v]).collect();
        current = next;
    }

    let c = center(current.graph())?;
    let star_center = ids[c];
    let mut edges: Vec<(usize, usize)> =
        (0..current.n()).filter(|&v| v != c).map(|v| (star_center, ids[v])).collect();
    for level in levels.iter().rev() {
        edges.extend(level.removed.iter().map(|&v| (level.x, v)));
    }
    let s = Tree::from_edges(t.n(), edges)?;
    let log = PeelingLog { levels, star_center };
    check_extracted(t, &s, k)?;
    Ok((s, log))
}

/// Every edge of `s` joins vertices within distance `k` in `t`, and `s` is (k+1)⁺-branching.
fn check_extracted(t: &Tree, s: &Tree, k: usize) -> Result<()> {
    if !s.is_k_branching(k + 1) {
        return Err(Error::defect(format!(
            "extracted tree has low-degree internal vertices {:?}",
            s.branching_violations(k + 1)
        )));
    }
    for u in 0..s.n() {
        let dist = bfs_distances(t.graph(), u)?;
        if let Some(&v) = s.neighbors(u).iter().find(|&&v| dist[v] > k) {
            return Err(Error::defect(format!("extracted edge {u}-{v} spans distance {}", dist[v])));
        }
    }
    Ok(())
}

/// A schedule for `G^k` and the trees it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerCertificate {
    pub certificate: ScheduleCertificate,
    /// BFS spanning tree of `G`; empty when `G^k` is complete.
    pub base_tree: Vec<(usize, usize)>,
    /// The (k+1)⁺-branching spanning tree of `T^k` that was burned.
    pub branching_tree: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peeling: Option<PeelingLog>,
}

/// Burns `G^k` (`2 <= k <= diam(G)`) within `ceil(sqrt(4(k-1)n/k^2))` rounds.
pub fn burn_graph_power(g: &Graph, k: usize) -> Result<PowerCertificate> {
    g.require_connected()?;
    let diam = diameter(g)?;
    if k < 2 || k > diam {
        return Err(Error::input(format!("k must lie in [2, diam = {diam}], got {k}")));
    }
    let n = g.n();
    let bound = power_bound(n, k).expect("k >= 2");
    let gk = graph_power(g, k)?;

    let (schedule, base_tree, branching_tree, peeling, recursion_log) = if k == diam {
        (realize(&gk, &[], &[Some(0), None])?, Vec::new(), Vec::new(), None, Vec::new())
    } else {
        let root = center(g)?;
        let base = Tree::from_edges(n, bfs_tree_edges(g, root)?)?;
        let (s, log) = extract_branching_spanning_tree(&base, k)?;
        let cert = burn_branching_tree(&s, k + 1)?;
        (cert.schedule, base.graph().edges(), s.graph().edges(), Some(log), cert.recursion_log)
    };

    let certificate = ScheduleCertificate {
        claimed_rounds: schedule.rounds(),
        schedule,
        bound_used: BoundKind::GraphPower { k },
        bound_value: bound,
        reference_bound: None,
        recursion_log,
    };
    certificate.verify(&gk)?;
    Ok(PowerCertificate { certificate, base_tree, branching_tree, peeling })
}

/// Limits for the exhaustive spanning-tree searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanningSearch {
    pub max_vertices: usize,
}

impl Default for SpanningSearch {
    fn default() -> Self {
        SpanningSearch { max_vertices: 16 }
    }
}

/// A spanning tree of `g` whose internal vertices all have degree `>= k`, if one exists.
///
/// Searches over candidate internal sets `I` in increasing size: `I` must be
/// connected, dominating, of high enough degree, and small enough that
/// `n >= |I|(k-1) + 2`. For each spanning tree of `g[I]` the leaves are
/// assigned by a matching that tops every internal degree up to `k`.
pub fn find_branching_spanning_tree(g: &Graph, k: usize, search: SpanningSearch) -> Result<Option<Tree>> {
    g.require_connected()?;
    let n = g.n();
    if k <= 2 || n <= 2 {
        let root = center(g)?;
        return Ok(Some(Tree::from_edges(n, bfs_tree_edges(g, root)?)?));
    }
    if n > search.max_vertices {
        return Err(Error::BudgetExceeded(format!(
            "spanning-tree search handles at most {} vertices, graph has {n}",
            search.max_vertices
        )));
    }
    let candidates: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= k).collect();
    let max_internal = (n - 2) / (k - 1);
    for size in 1..=max_internal.min(candidates.len()) {
        let mut chosen = Vec::with_capacity(size);
        if let Some(t) = internal_sets(g, k, &candidates, size, 0, &mut chosen)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// True when `g` has no spanning tree with all internal degrees `>= k`.
pub fn verify_no_branching_spanning_tree(g: &Graph, k: usize, search: SpanningSearch) -> Result<bool> {
    Ok(find_branching_spanning_tree(g, k, search)?.is_none())
}

fn internal_sets(
    g: &Graph,
    k: usize,
    candidates: &[usize],
    size: usize,
    from: usize,
    chosen: &mut Vec<usize>,
) -> Result<Option<Tree>> {
    if chosen.len() == size {
        return tree_with_internals(g, k, chosen);
    }
    for i in from..candidates.len() {
        if candidates.len() - i < size - chosen.len() {
            break;
        }
        chosen.push(candidates[i]);
        if let Some(t) = internal_sets(g, k, candidates, size, i + 1, chosen)? {
            return Ok(Some(t));
        }
        chosen.pop();
    }
    Ok(None)
}

fn tree_with_internals(g: &Graph, k: usize, internal: &[usize]) -> Result<Option<Tree>> {
    let n = g.n();
    let mut is_internal = vec![false; n];
    internal.iter().for_each(|&v| is_internal[v] = true);
    let leaves: Vec<usize> = (0..n).filter(|&v| !is_internal[v]).collect();
    if leaves.iter().any(|&l| !g.neighbors(l).iter().any(|&u| is_internal[u])) {
        return Ok(None);
    }
    let (sub, map) = g.induced(internal)?;
    if !sub.is_connected() {
        return Ok(None);
    }

    let mut by_degrees: HashMap<Vec<usize>, Vec<(usize, usize)>> = HashMap::new();
    let sub_edges = sub.edges();
    let mut picked = Vec::new();
    let mut uf = UnionFind::new(sub.n());
    spanning_edge_sets(&sub_edges, 0, sub.n() - 1, &mut picked, &mut uf, &mut |edges| {
        let mut deg = vec![0; sub.n()];
        for &(a, b) in edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        by_degrees.entry(deg).or_insert_with(|| edges.to_vec());
    });
    let mut vectors: Vec<_> = by_degrees.into_iter().collect();
    vectors.sort();

    for (deg, edges) in vectors {
        let demand: Vec<usize> = (0..sub.n()).map(|i| k.saturating_sub(deg[i])).collect();
        if let Some(owner) = assign_leaves(g, &map, &leaves, &demand) {
            let mut all: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (map.to_old(a), map.to_old(b))).collect();
            all.extend(leaves.iter().zip(&owner).map(|(&l, &o)| (l, map.to_old(o))));
            let t = Tree::from_edges(n, all)?;
            if !t.is_k_branching(k) || t.graph().edges().iter().any(|&(a, b)| !g.has_edge(a, b)) {
                return Err(Error::defect("assembled spanning tree breaks its constraints"));
            }
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Calls `visit` with every acyclic `need`-edge subset of `edges`.
fn spanning_edge_sets(
    edges: &[(usize, usize)],
    from: usize,
    need: usize,
    picked: &mut Vec<(usize, usize)>,
    uf: &mut UnionFind,
    visit: &mut impl FnMut(&[(usize, usize)]),
) {
    if picked.len() == need {
        visit(picked);
        return;
    }
    for i in from..edges.len() {
        if edges.len() - i < need - picked.len() {
            break;
        }
        let (a, b) = edges[i];
        if uf.find(a) == uf.find(b) {
            continue;
        }
        let saved = uf.parent.clone();
        uf.union(a, b);
        picked.push((a, b));
        spanning_edge_sets(edges, i + 1, need, picked, uf, visit);
        picked.pop();
        uf.parent = saved;
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
    }
}

/// Gives each leaf an adjacent internal owner (local id) so that internal
/// vertex `i` receives at least `demand[i]` leaves, if possible.
fn assign_leaves(g: &Graph, map: &crate::graph::Relabeling, leaves: &[usize], demand: &[usize]) -> Option<Vec<usize>> {
    // one slot per unit of demand, matched to leaves by augmenting paths
    let slots: Vec<usize> = demand.iter().enumerate().flat_map(|(i, &d)| std::iter::repeat_n(i, d)).collect();
    if slots.len() > leaves.len() {
        return None;
    }
    let adj: Vec<Vec<usize>> = leaves
        .iter()
        .map(|&l| g.neighbors(l).iter().filter_map(|&u| map.to_new(u)).collect())
        .collect();
    let mut leaf_of_slot: Vec<Option<usize>> = vec![None; slots.len()];
    let mut slot_of_leaf: Vec<Option<usize>> = vec![None; leaves.len()];

    fn augment(
        s: usize,
        slots: &[usize],
        adj: &[Vec<usize>],
        seen: &mut [bool],
        leaf_of_slot: &mut [Option<usize>],
        slot_of_leaf: &mut [Option<usize>],
    ) -> bool {
        for l in 0..adj.len() {
            if seen[l] || !adj[l].contains(&slots[s]) {
                continue;
            }
            seen[l] = true;
            let free = match slot_of_leaf[l] {
                None => true,
                Some(other) => augment(other, slots, adj, seen, leaf_of_slot, slot_of_leaf),
            };
            if free {
                slot_of_leaf[l] = Some(s);
                leaf_of_slot[s] = Some(l);
                return true;
            }
        }
        false
    }

    for s in 0..slots.len() {
        let mut seen = vec![false; leaves.len()];
        if !augment(s, &slots, &adj, &mut seen, &mut leaf_of_slot, &mut slot_of_leaf) {
            return None;
        }
    }
    Some(
        (0..leaves.len())
            .map(|l| match slot_of_leaf[l] {
                Some(s) => slots[s],
                None => *adj[l].iter().min().expect("internal set dominates"),
            })
            .collect(),
    )
}

/// Every spanning tree of `g`, refusing graphs with more than `max_edges` edges.
pub fn all_spanning_trees(g: &Graph, max_edges: usize) -> Result<Vec<Tree>> {
    g.require_connected()?;
    let edges = g.edges();
    if edges.len() > max_edges {
        return Err(Error::BudgetExceeded(format!(
            "spanning-tree enumeration handles at most {max_edges} edges, graph has {}",
            edges.len()
        )));
    }
    let n = g.n();
    let mut out = Vec::new();
    let mut picked = Vec::new();
    let mut uf = UnionFind::new(n);
    let mut found: Vec<Vec<(usize, usize)>> = Vec::new();
    spanning_edge_sets(&edges, 0, n - 1, &mut picked, &mut uf, &mut |e| found.push(e.to_vec()));
    let mut seen = HashSet::new();
    for e in found {
        if seen.insert(e.clone()) {
            out.push(Tree::from_edges(n, e)?);
        }
    }
    Ok(out)
}

/// Eccentricity of the star centre in the tree left after peeling.
pub fn peeled_radius(t: &Tree, log: &PeelingLog) -> Result<usize> {
    let mut alive = vec![true; t.n()];
    log.levels.iter().flat_map(|l| &l.removed).for_each(|&v| alive[v] = false);
    let keep: Vec<usize> = (0..t.n()).filter(|&v| alive[v]).collect();
    let (rest, map) = t.induced_subtree(&keep)?;
    let c = map.to_new(log.star_center).ok_or_else(|| Error::defect("star centre was removed"))?;
    eccentricity(rest.graph(), c)
}
