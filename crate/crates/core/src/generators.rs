//! Deterministic graph and tree families.
//!
//! Random families take a `u64` seed and use ChaCha8, so a given seed yields
//! the same graph on every platform for this implementation.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree::Tree;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Result<Tree> {
    Tree::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

/// Star with center `0` and `n - 1` leaves.
pub fn star(n: usize) -> Result<Tree> {
    Tree::from_edges(n, (1..n).map(|v| (0, v)))
}

/// Spider: center `0` with `legs` paths of `leg_len` vertices each.
/// Leg `i` is `0 - (1 + i*leg_len) - ... - ((i+1)*leg_len)`.
pub fn spider(legs: usize, leg_len: usize) -> Result<Tree> {
    let n = 1 + legs * leg_len;
    let mut edges = Vec::with_capacity(n - 1);
    for leg in 0..legs {
        let first = 1 + leg * leg_len;
        for j in 0..leg_len {
            let prev = if j == 0 { 0 } else { first + j - 1 };
            edges.push((prev, first + j));
        }
    }
    Tree::from_edges(n, edges)
}

/// Whether some k⁺-branching tree on `n` vertices exists.
pub fn branching_order_feasible(n: usize, k: usize) -> bool {
    n >= 1 && (n <= 2 || k <= 2 || n > k)
}

fn require_branching_order(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    if !branching_order_feasible(n, k) {
        return Err(Error::domain(format!(
            "no {k}+-branching tree has {n} vertices; the smallest feasible order above 2 is {}",
            k + 1
        )));
    }
    Ok(())
}

/// A k⁺-branching caterpillar on `n` vertices whose central path has
/// `floor((n-2)/(k-1)) + 2` vertices, labelled `0..t` along the path.
/// Every inner path vertex carries `k - 2` pendant leaves; the remaining
/// leaves are spread over inner path vertices at random.
pub fn caterpillar_branching(n: usize, k: usize, seed: u64) -> Result<Tree> {
    if k < 2 {
        return Err(Error::input("caterpillar branching degree must be at least 2"));
    }
    require_branching_order(n, k)?;
    if n <= 2 {
        return path(n);
    }
    let inner = (n - 2) / (k - 1);
    let spine = inner + 2;
    let mut edges: Vec<(usize, usize)> = (1..spine).map(|v| (v - 1, v)).collect();
    let mut next = spine;
    for v in 1..=inner {
        for _ in 0..k - 2 {
            edges.push((v, next));
            next += 1;
        }
    }
    let mut rng = rng(seed);
    while next < n {
        edges.push((rng.gen_range(1..=inner), next));
        next += 1;
    }
    Tree::from_edges(n, edges)
}

/// Uniform random labelled tree via a Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Tree> {
    if n <= 2 {
        return path(n);
    }
    let mut rng = rng(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    Tree::from_edges(n, prufer_decode(n, &code))
}

fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &v in code {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in code {
        let Reverse(leaf) = leaves.pop().expect("prufer code always leaves a leaf");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    edges
}

/// Random k⁺-branching tree on `n` vertices.
///
/// Growth starts from a star with at least `k` leaves; each step picks a
/// current leaf uniformly and gives it a batch of `k-1..=2(k-1)` new leaf
/// children. Fewer than `k-1` leftover vertices are hung on random internal
/// vertices. Labels are shuffled at the end.
pub fn random_branching_tree(n: usize, k: usize, seed: u64) -> Result<Tree> {
    let k = k.max(2);
    require_branching_order(n, k)?;
    if n <= 2 {
        return path(n);
    }
    let mut rng = rng(seed);
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves = Vec::new();
    let mut internal = vec![0usize];

    let first = k + rng.gen_range(0..=(n - 1 - k).min(k - 1));
    for v in 1..=first {
        edges.push((0, v));
        leaves.push(v);
    }
    let mut next = first + 1;
    while n - next >= k - 1 {
        let remaining = n - next;
        let batch = k - 1 + rng.gen_range(0..=(remaining - (k - 1)).min(k - 1));
        let parent = leaves.swap_remove(rng.gen_range(0..leaves.len()));
        internal.push(parent);
        for _ in 0..batch {
            edges.push((parent, next));
            leaves.push(next);
            next += 1;
        }
    }
    while next < n {
        edges.push((internal[rng.gen_range(0..internal.len())], next));
        next += 1;
    }

    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    Tree::from_edges(n, edges.into_iter().map(|(u, v)| (perm[u], perm[v])))
}

/// Random connected graph with `n` vertices and `m` edges: a Prüfer tree
/// plus `m - (n-1)` distinct extra edges drawn uniformly from the non-edges.
pub fn random_connected_graph(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    let max_edges = n * (n - 1) / 2;
    if m + 1 < n || m > max_edges {
        return Err(Error::input(format!(
            "a connected graph on {n} vertices has between {} and {max_edges} edges, got {m}",
            n - 1
        )));
    }
    let tree = random_tree(n, seed)?;
    let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let g = tree.graph();
    let mut extra: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    extra.shuffle(&mut rng);
    let mut edges = g.edges();
    edges.extend(extra.into_iter().take(m + 1 - n));
    Graph::from_edges(n, edges)
}

/// A tree with exactly one vertex `y` of degree `k - 1`, adjacent to a
/// non-leaf `z`, every other internal vertex having degree at least `k`.
/// Contracting `yz` gives back a k⁺-branching tree on `n - 1` vertices.
///
/// Built by splitting a vertex `z` of degree at least `2k - 3` of a random
/// k⁺-branching tree: `k - 2` of its neighbours move to the new vertex `y`.
/// Returns `(tree, y, z)`.
pub fn contraction_instance(n: usize, k: usize, seed: u64) -> Result<(Tree, usize, usize)> {
    if k < 3 {
        return Err(Error::input("contraction instances need k >= 3"));
    }
    if n < 2 * k - 1 {
        return Err(Error::domain(format!("contraction instances for k = {k} need n >= {}", 2 * k - 1)));
    }
    let mut rng = rng(seed);
    for _ in 0..1000 {
        let base = random_branching_tree(n - 1, k, rng.gen())?;
        let hubs: Vec<usize> = (0..n - 1).filter(|&v| base.degree(v) >= 2 * k - 3).collect();
        let Some(&z) = hubs.choose(&mut rng) else { continue };
        let y = n - 1;
        let mut moved = base.neighbors(z).to_vec();
        moved.shuffle(&mut rng);
        moved.truncate(k - 2);
        let mut edges: Vec<(usize, usize)> = base
            .graph()
            .edges()
            .into_iter()
            .filter(|&(a, b)| !((a == z && moved.contains(&b)) || (b == z && moved.contains(&a))))
            .collect();
        edges.extend(moved.iter().map(|&w| (y, w)));
        edges.push((y, z));
        return Ok((Tree::from_edges(n, edges)?, y, z));
    }
    Err(Error::domain(format!("no vertex of degree {} found for n = {n}, k = {k}", 2 * k - 3)))
}
