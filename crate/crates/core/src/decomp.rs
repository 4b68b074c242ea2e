//! Structural tree facts: split vertices, internal-vertex counting, leaf
//! counting and leaf stripping.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Relabeling;
use crate::tree::Tree;

/// Exact threshold for split-vertex searches.
pub type Threshold = Ratio<u64>;

fn ser_ratio<S: Serializer>(p: &Threshold, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// A vertex `x` with neighbours `v_1..v_m` (`m >= 2`) such that every
/// `|T_{v_i}(x v_i)| <= p` for `i < m` while `|T_x(x v_m)| > p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitCertificate {
    pub x: usize,
    /// `v_1..v_m`; the last entry is the large side.
    pub ordered_neighbors: Vec<usize>,
    /// `|T_{v_i}(x v_i)|` for `i < m`, then `|T_x(x v_m)|`.
    pub side_sizes: Vec<usize>,
    #[serde(serialize_with = "ser_ratio")]
    pub p: Threshold,
}

impl SplitCertificate {
    /// The neighbour `v_m` across the large side.
    pub fn large_neighbor(&self) -> usize {
        *self.ordered_neighbors.last().expect("m >= 2")
    }

    /// Re-derives every side from scratch and checks the inequalities.
    pub fn verify(&self, t: &Tree) -> Result<()> {
        let m = self.ordered_neighbors.len();
        let fail = |msg: String| Err(Error::defect(format!("split certificate at {}: {msg}", self.x)));
        if m < 2 || m != t.degree(self.x) || self.side_sizes.len() != m {
            return fail(format!("expected all {} neighbours, got {m}", t.degree(self.x)));
        }
        let p = self.p;
        let mut covered = 1;
        for (i, &v) in self.ordered_neighbors[..m - 1].iter().enumerate() {
            let side = t.component_on_edge_removal(v, self.x)?.len();
            if side != self.side_sizes[i] || Ratio::from_integer(side as u64) > p {
                return fail(format!("side of {v} has {side} vertices, threshold {p}"));
            }
            covered += side;
        }
        let large = t.component_on_edge_removal(self.x, self.large_neighbor())?.len();
        if large != self.side_sizes[m - 1] || Ratio::from_integer(large as u64) <= p {
            return fail(format!("large side has {large} vertices, threshold {p}"));
        }
        if covered != large {
            return fail("small sides do not partition the large side".into());
        }
        Ok(())
    }
}

/// Finds a split vertex for threshold `p ∈ [1, n-1)`.
///
/// Walks from the smallest-id leaf, always stepping into the child whose
/// subtree exceeds `p` (smallest id on ties), and stops at the first vertex
/// with no such child. The side behind the walk is then the large side.
pub fn find_split_vertex(t: &Tree, p: Threshold) -> Result<SplitCertificate> {
    let n = t.n();
    if n < 3 {
        return Err(Error::input(format!("split vertices need at least 3 vertices, got {n}")));
    }
    if p < Ratio::from_integer(1) || p >= Ratio::from_integer(n as u64 - 1) {
        return Err(Error::input(format!("threshold {p} outside [1, {})", n - 1)));
    }
    // sizes are integers, so comparing against floor(p) is exact
    let cut = p.to_integer() as usize;
    let start = (0..n).find(|&v| t.is_leaf(v)).expect("trees have leaves");
    let rooted = t.rooted(start)?;
    let parent_of = &rooted.parent;
    let children = |v: usize| t.neighbors(v).iter().copied().filter(move |&w| parent_of[v] != Some(w));

    let mut x = start;
    while let Some(next) = children(x).filter(|&c| rooted.size[c] > cut).min() {
        x = next;
    }
    let parent = rooted.parent[x].ok_or_else(|| Error::defect("split walk never left its start leaf"))?;
    let mut ordered_neighbors: Vec<usize> = children(x).collect();
    ordered_neighbors.sort_unstable();
    let mut side_sizes: Vec<usize> = ordered_neighbors.iter().map(|&c| rooted.size[c]).collect();
    ordered_neighbors.push(parent);
    side_sizes.push(rooted.size[x]);
    Ok(SplitCertificate { x, ordered_neighbors, side_sizes, p })
}

/// `I(k-1) + 2`: the fewest vertices of a k⁺-branching tree with at least `I` internal vertices.
pub fn min_order_for_internals(internals: usize, k: usize) -> usize {
    internals * (k - 1) + 2
}

/// The most internal vertices a k⁺-branching tree on `n` vertices can have.
pub fn max_internal_count(n: usize, k: usize) -> usize {
    if n < 2 || k < 2 {
        return n.saturating_sub(2);
    }
    (n - 2) / (k - 1)
}

/// `ceil(n(k-2)/(k-1))`: the fewest leaves of a k⁺-branching tree on `n` vertices (`k >= 3`).
pub fn min_leaf_count(n: usize, k: usize) -> usize {
    (n * (k - 2)).div_ceil(k - 1)
}

/// The subtree induced by the internal vertices.
pub fn strip_leaves(t: &Tree) -> Result<(Tree, Relabeling)> {
    let internal = t.internal_vertices();
    if internal.is_empty() {
        return Err(Error::domain(format!(
            "a tree on {} vertices has no internal vertex to keep",
            t.n()
        )));
    }
    t.induced_subtree(&internal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{path, random_branching_tree, star};

    fn nine() -> Tree {
        Tree::from_edges(9, [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (5, 6), (5, 7), (7, 8)]).unwrap()
    }

    fn int(v: u64) -> Threshold {
        Ratio::from_integer(v)
    }

    /// Every `(x, v_m)` pair satisfying the split inequalities, by brute force.
    fn all_splits(t: &Tree, p: Threshold) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..t.n() {
            if t.degree(x) < 2 {
                continue;
            }
            for &vm in t.neighbors(x) {
                let large = t.component_on_edge_removal(x, vm).unwrap().len();
                let ok = Ratio::from_integer(large as u64) > p
                    && t.neighbors(x).iter().filter(|&&v| v != vm).all(|&v| {
                        Ratio::from_integer(t.component_on_edge_removal(v, x).unwrap().len() as u64) <= p
                    });
                if ok {
                    out.push((x, vm));
                }
            }
        }
        out
    }

    #[test]
    fn star_split() {
        let c = find_split_vertex(&star(6).unwrap(), int(2)).unwrap();
        assert_eq!(c.x, 0);
        assert_eq!(c.side_sizes, vec![1, 1, 1, 1, 5]);
        c.verify(&star(6).unwrap()).unwrap();
    }

    #[test]
    fn path_split() {
        let p5 = path(5).unwrap();
        let c = find_split_vertex(&p5, int(2)).unwrap();
        assert_eq!(c.x, 2);
        assert_eq!(*c.side_sizes.last().unwrap(), 3);
        assert_eq!(c.side_sizes[0], 2);
        assert!(all_splits(&p5, int(2)).contains(&(c.x, c.large_neighbor())));
        assert!(all_splits(&p5, int(2)).contains(&(2, 3)));
    }

    #[test]
    fn nine_vertex_split() {
        let t = nine();
        let c = find_split_vertex(&t, int(3)).unwrap();
        c.verify(&t).unwrap();
        let brute = all_splits(&t, int(3));
        assert!(brute.contains(&(3, 5)));
        assert!(brute.contains(&(c.x, c.large_neighbor())));
    }

    #[test]
    fn fractional_threshold() {
        let t = nine();
        let p = Ratio::new(7, 2);
        let c = find_split_vertex(&t, p).unwrap();
        c.verify(&t).unwrap();
        assert!(all_splits(&t, p).contains(&(c.x, c.large_neighbor())));
    }

    #[test]
    fn split_input_errors() {
        assert!(find_split_vertex(&path(2).unwrap(), int(1)).is_err());
        assert!(find_split_vertex(&path(5).unwrap(), int(4)).is_err());
        assert!(find_split_vertex(&path(5).unwrap(), Ratio::new(1, 2)).is_err());
        assert!(find_split_vertex(&path(5).unwrap(), Ratio::new(7, 2)).is_ok());
    }

    #[test]
    fn counting_formulas() {
        assert_eq!(min_order_for_internals(1, 3), 4);
        assert_eq!(min_order_for_internals(0, 5), 2);
        assert_eq!(min_order_for_internals(3, 4), 11);
        assert_eq!(min_leaf_count(4, 3), 2);
        assert_eq!(min_leaf_count(10, 3), 5);
        assert_eq!(min_leaf_count(20, 4), 14);
        assert_eq!(max_internal_count(11, 4), 3);
        assert_eq!(max_internal_count(10, 4), 2);
    }

    /// Brute force over the degree sequences of all trees on `n` labelled
    /// vertices: every multiset of Prüfer symbols is realised by some code.
    fn max_internals_brute(n: usize, k: usize) -> usize {
        fn rec(n: usize, k: usize, from: usize, left: usize, deg: &mut Vec<usize>, best: &mut usize) {
            if left == 0 {
                if deg.iter().all(|&d| d == 1 || d >= k) {
                    *best = (*best).max(deg.iter().filter(|&&d| d >= 2).count());
                }
                return;
            }
            for v in from..n {
                deg[v] += 1;
                rec(n, k, v, left - 1, deg, best);
                deg[v] -= 1;
            }
        }
        let mut best = 0;
        rec(n, k, 0, n - 2, &mut vec![1; n], &mut best);
        best
    }

    #[test]
    fn internal_count_bound_is_tight() {
        assert_eq!(max_internals_brute(11, 4), 3);
        assert_eq!(max_internals_brute(10, 4), 2);
        assert_eq!(max_internals_brute(8, 3), 3);
    }

    #[test]
    fn strip_examples() {
        let (t, _) = strip_leaves(&star(6).unwrap()).unwrap();
        assert_eq!(t.n(), 1);
        let (t, map) = strip_leaves(&nine()).unwrap();
        assert_eq!(map.new_to_old(), &[2, 3, 5, 7]);
        assert_eq!(t.graph().edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert!(strip_leaves(&path(2).unwrap()).is_err());
        for seed in 0..20 {
            let t = random_branching_tree(30, 4, seed).unwrap();
            assert!(strip_leaves(&t).unwrap().0.n() <= 10);
        }
    }
}
