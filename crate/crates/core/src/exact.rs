//! Exact burning numbers by iterative deepening.
//!
//! `b(G) <= t` iff there are centres `x_1..x_t` whose balls
//! `N_{t-i}[x_i]` cover `V`. For each `t` a depth-first search picks the
//! centres in order, with
//! - a counting prune: the uncovered vertices must fit into the largest
//!   remaining balls (measured against the uncovered set);
//! - a memo of `(depth, covered)` states already known to fail;
//! - sibling dominance: a candidate whose new coverage is contained in that
//!   of a failed sibling is skipped.
//!
//! Candidates are tried in ascending id order, so the first witness found is
//! the lexicographically smallest among witnesses with distinct sources.

use std::collections::HashSet;

use serde::Serialize;

use crate::burn::{is_valid, BurnSchedule};
use crate::error::{Error, Result};
use crate::graph::{bfs_distances, Graph, UNREACHABLE};

/// Hard limit of the bitset representation.
pub const MAX_EXACT_VERTICES: usize = 128;

/// Environment variable that lowers the exact-solver vertex cap.
pub const EXACT_CAP_ENV: &str = "BURNKIT_EXACT_CAP";

/// Vertex cap for exact search: `BURNKIT_EXACT_CAP` if set (clamped to
/// [`MAX_EXACT_VERTICES`]), otherwise [`MAX_EXACT_VERTICES`].
pub fn exact_vertex_cap() -> usize {
    std::env::var(EXACT_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map_or(MAX_EXACT_VERTICES, |c| c.min(MAX_EXACT_VERTICES))
}

/// `2 * ceil(sqrt(n)) - 1`, an upper bound on `b(G)` for every connected graph.
pub fn default_round_budget(n: usize) -> usize {
    2 * crate::bounds::ceil_sqrt_frac(n as u128, 1) as usize - 1
}

/// An optimal value together with a schedule attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub value: usize,
    pub witness: BurnSchedule,
}

type Mask = u128;

struct Balls {
    n: usize,
    full: Mask,
    /// `by_radius[r][v]` is `N_r[v]`.
    by_radius: Vec<Vec<Mask>>,
}

impl Balls {
    fn new(g: &Graph, max_radius: usize) -> Result<Self> {
        let n = g.n();
        let dist: Vec<Vec<usize>> = (0..n).map(|v| bfs_distances(g, v)).collect::<Result<_>>()?;
        let by_radius = (0..=max_radius)
            .map(|r| {
                (0..n)
                    .map(|v| {
                        (0..n)
                            .filter(|&u| dist[v][u] != UNREACHABLE && dist[v][u] <= r)
                            .fold(0, |m, u| m | (1 << u))
                    })
                    .collect()
            })
            .collect();
        let full = if n == 128 { Mask::MAX } else { (1 << n) - 1 };
        Ok(Balls { n, full, by_radius })
    }

    fn grow(&mut self, g: &Graph, max_radius: usize) -> Result<()> {
        if max_radius >= self.by_radius.len() {
            *self = Balls::new(g, max_radius)?;
        }
        Ok(())
    }
}

struct Search<'a> {
    balls: &'a Balls,
    t: usize,
    failed: Vec<HashSet<Mask>>,
    chosen: Vec<usize>,
    used: Mask,
}

impl Search<'_> {
    fn radius(&self, depth: usize) -> usize {
        self.t - 1 - depth
    }

    fn coverable(&self, depth: usize, uncovered: Mask) -> u32 {
        (depth..self.t)
            .map(|d| {
                let r = self.radius(d);
                self.balls.by_radius[r]
                    .iter()
                    .map(|&b| (b & uncovered).count_ones())
                    .max()
                    .unwrap_or(0)
            })
            .sum()
    }

    fn dfs(&mut self, depth: usize, covered: Mask) -> bool {
        let uncovered = self.balls.full & !covered;
        if depth == self.t {
            return uncovered == 0;
        }
        if self.failed[depth].contains(&covered) {
            return false;
        }
        if uncovered.count_ones() > self.coverable(depth, uncovered) {
            self.failed[depth].insert(covered);
            return false;
        }
        let r = self.radius(depth);
        let mut tried: Vec<Mask> = Vec::new();
        for v in 0..self.balls.n {
            if self.used & (1 << v) != 0 {
                continue;
            }
            let gain = self.balls.by_radius[r][v] & uncovered;
            if tried.iter().any(|&f| gain & !f == 0) {
                continue;
            }
            self.chosen.push(v);
            self.used |= 1 << v;
            if self.dfs(depth + 1, covered | gain) {
                return true;
            }
            self.used &= !(1 << v);
            self.chosen.pop();
            tried.push(gain);
        }
        self.failed[depth].insert(covered);
        false
    }
}

fn solve(g: &Graph, initial: &[usize], budget: usize) -> Result<ExactResult> {
    let n = g.n();
    let cap = exact_vertex_cap();
    if n > cap {
        return Err(Error::input(format!(
            "exact search handles at most {cap} vertices, graph has {n}"
        )));
    }
    g.require_connected()?;
    for &u in initial {
        g.check_vertex(u)?;
    }
    let mut balls = Balls::new(g, 1)?;
    for t in 1..=budget.min(n) {
        balls.grow(g, t - 1)?;
        let start: Mask = initial
            .iter()
            .fold(0, |m, &u| m | balls.by_radius[t - 1][u]);
        let mut search = Search {
            balls: &balls,
            t,
            failed: vec![HashSet::new(); t],
            chosen: Vec::with_capacity(t),
            used: 0,
        };
        if search.dfs(0, start) {
            let witness = BurnSchedule::modified(initial.to_vec(), search.chosen)?;
            if !is_valid(g, &witness)? {
                return Err(Error::defect(format!("exact witness {witness:?} does not burn the graph")));
            }
            return Ok(ExactResult { value: t, witness });
        }
    }
    Err(Error::BudgetExceeded(format!(
        "no schedule with at most {budget} rounds"
    )))
}

/// The burning number `b(G)` of a connected graph, searching `t = 1..=budget`.
pub fn exact_burning_number(g: &Graph, budget: usize) -> Result<ExactResult> {
    solve(g, &[], budget)
}

/// The modified burning number `b^U(G)`: round 1 burns `U` together with the first source.
pub fn exact_modified_burning_number(g: &Graph, initial_set: &[usize], budget: usize) -> Result<ExactResult> {
    if initial_set.is_empty() {
        return Err(Error::input("modified burning needs a nonempty initial set"));
    }
    solve(g, initial_set, budget)
}
