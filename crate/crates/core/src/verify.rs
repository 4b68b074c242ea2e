//! Seeded property suites over the whole library.
//!
//! Each suite draws its instances from a ChaCha8 stream seeded with
//! [`SuiteConfig::seed`], so a run is reproducible. A case that returns an
//! error counts as a failure.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{
    branching_bound, branching_not_worse, caterpillar_lower_bound, ceil_sqrt_frac, power_bound, threshold_n,
    TABLE1_KS,
};
use crate::burn::{is_valid, simulate, BurnSchedule};
use crate::decomp::{find_split_vertex, max_internal_count, min_leaf_count, min_order_for_internals, Threshold};
use crate::error::{Error, Result};
use crate::exact::{default_round_budget, exact_burning_number, exact_modified_burning_number};
use crate::generators::{
    caterpillar_branching, contraction_instance, path, random_branching_tree, random_connected_graph, random_tree,
    star,
};
use crate::graph::{diameter, graph_power, Graph};
use crate::power::{
    all_spanning_trees, burn_graph_power, extract_branching_spanning_tree, verify_no_branching_spanning_tree,
    SpanningSearch,
};
use crate::schedule::{burn_branching_modified, burn_branching_tree, leafstrip_schedule, InnerStrategy};
use crate::tree::Tree;

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    /// Number of random instances per randomized suite.
    pub trees: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { trees: 100, seed: 42 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: usize,
    /// The first few failure messages.
    pub examples: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), cases: 0, failures: 0, examples: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn case(&mut self, outcome: Result<()>) {
        self.cases += 1;
        if let Err(e) = outcome {
            self.failures += 1;
            if self.examples.len() < 10 {
                self.examples.push(e.to_string());
            }
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::defect(msg()))
    }
}

type SuiteFn = fn(&SuiteConfig, &mut SuiteReport);

const SUITES: &[(&str, SuiteFn)] = &[
    ("nine-vertex-example", nine_vertex_example),
    ("threshold-table", threshold_table),
    ("known-values", known_values),
    ("graph-invariants", graph_invariants),
    ("split-vertex", split_vertex),
    ("internal-count", internal_count),
    ("branching-schedule", branching_schedule),
    ("contraction", contraction),
    ("modified-burning", modified_burning),
    ("leafstrip", leafstrip),
    ("spanning-extraction", spanning_extraction),
    ("square-burning", square_burning),
    ("power-schedule", power_schedule),
    ("no-high-branching", no_high_branching),
    ("caterpillar-lower-bound", caterpillar_lower),
    ("spanning-subtree", spanning_subtree),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(name, _)| *name).collect()
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let (_, run) = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::input(format!("unknown suite {name:?}; known suites: {}", suite_names().join(", "))))?;
    let mut report = SuiteReport::new(name);
    run(cfg, &mut report);
    Ok(report)
}

pub fn run_all(cfg: &SuiteConfig) -> Vec<SuiteReport> {
    SUITES
        .iter()
        .map(|(name, run)| {
            let mut report = SuiteReport::new(name);
            run(cfg, &mut report);
            report
        })
        .collect()
}

fn stream(cfg: &SuiteConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn exact_b(g: &Graph) -> Result<usize> {
    Ok(exact_burning_number(g, default_round_budget(g.n()))?.value)
}

/// The nine-vertex tree with rounds `{2}`, `{0,1,3,5}`, `{4,6,7,8}` under sources `(2, 5, 8)`.
pub fn nine_vertex_tree() -> Tree {
    Tree::from_edges(9, [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (5, 6), (5, 7), (7, 8)])
        .expect("fixed tree is valid")
}

fn nine_vertex_example(_: &SuiteConfig, r: &mut SuiteReport) {
    let t = nine_vertex_tree();
    r.case((|| {
        let b = exact_b(t.graph())?;
        ensure(b == 3, || format!("burning number {b}, expected 3"))
    })());
    r.case((|| {
        let trace = simulate(t.graph(), &BurnSchedule::new(vec![2, 5, 8])?)?;
        ensure(trace.is_complete() && trace.completion_round() == Some(3), || {
            format!("sources (2, 5, 8) give {:?}", trace.burn_round)
        })
    })());
    r.case((|| {
        for a in 0..9 {
            for b in 0..9 {
                ensure(!is_valid(t.graph(), &BurnSchedule::new(vec![a, b])?)?, || {
                    format!("({a}, {b}) burns the tree in 2 rounds")
                })?;
            }
        }
        Ok(())
    })());
}

fn threshold_table(_: &SuiteConfig, r: &mut SuiteReport) {
    let expected = [118, 52, 48, 49, 53, 57, 62, 67, 121, 288, 567, 1127];
    for (k, want) in TABLE1_KS.into_iter().zip(expected) {
        r.case((|| {
            let got = threshold_n(k)?;
            ensure(got == want, || format!("k = {k}: threshold {got}, expected {want}"))?;
            ensure(
                branching_not_worse(got, k as u64)? && !branching_not_worse(got + 1, k as u64)?,
                || format!("k = {k}: {got} is not the boundary"),
            )
        })());
    }
}

fn known_values(_: &SuiteConfig, r: &mut SuiteReport) {
    for n in 1..=25 {
        r.case((|| {
            let b = exact_b(path(n)?.graph())?;
            let want = ceil_sqrt_frac(n as u128, 1) as usize;
            ensure(b == want, || format!("b(P_{n}) = {b}, expected {want}"))
        })());
    }
    for n in 2..=20 {
        r.case((|| {
            let b = exact_b(star(n)?.graph())?;
            ensure(b == 2, || format!("b(star({n})) = {b}"))
        })());
    }
    for n in 2..=10 {
        r.case((|| {
            let b = exact_b(&Graph::complete(n)?)?;
            ensure(b == 2, || format!("b(K_{n}) = {b}"))
        })());
    }
}

fn graph_invariants(cfg: &SuiteConfig, r: &mut SuiteReport) {
    let mut rng = stream(cfg, 1);
    for _ in 0..cfg.trees {
        let n = rng.gen_range(2..=30);
        let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(2 * n));
        let seed = rng.gen();
        r.case((|| {
            let g = random_connected_graph(n, m, seed)?;
            let degree_sum: usize = (0..n).map(|v| g.degree(v)).sum();
            ensure(degree_sum == 2 * g.edge_count(), || "degree sum is not twice the edge count".into())?;
            let diam = diameter(&g)?;
            let mut prev = g.clone();
            for k in 1..=diam + 1 {
                let gk = graph_power(&g, k)?;
                for (u, v) in gk.edges() {
                    ensure(gk.has_edge(v, u), || format!("power {k} is not symmetric at {u}-{v}"))?;
                }
                ensure(prev.edges().iter().all(|&(u, v)| gk.has_edge(u, v)), || {
                    format!("power {k} lost an edge of power {}", k - 1)
                })?;
                prev = gk;
            }
            ensure(prev == Graph::complete(n)?, || "power beyond the diameter is not complete".into())
        })());
    }
    for _ in 0..cfg.trees {
        let n = rng.gen_range(2..=40);
        let seed = rng.gen();
        r.case((|| {
            let t = random_tree(n, seed)?;
            for (x, y) in t.graph().edges() {
                let a = t.component_on_edge_removal(x, y)?.len();
                let b = t.component_on_edge_removal(y, x)?.len();
                ensure(a + b == n, || format!("removing {x}-{y} splits {n} into {a} + {b}"))?;
                let (c, _) = t.contract_edge(x, y)?;
                ensure(c.n() == n - 1, || format!("contracting {x}-{y} left {} vertices", c.n()))?;
            }
            Ok(())
        })());
    }
}

fn split_vertex(cfg: &SuiteConfig, r: &mut SuiteReport) {
    let mut rng = stream(cfg, 2);
    for _ in 0..cfg.trees {
        let n = rng.gen_range(3..=50);
        let seed = rng.gen();
        let num = rng.gen_range(2..2 * (n as u64 - 1));
        let p = Threshold::new(num, 2);
        r.case((|| {
            let t = random_tree(n, seed)?;
            find_split_vertex(&t, p)?.verify(&t)
        })());
    }
}

fn internal_count(cfg: &SuiteConfig, r: &mut SuiteReport) {
    let mut rng = stream(cfg, 3);
    for _ in 0..cfg.trees {
        let k = rng.gen_range(3..=6);
        let n = rng.gen_range(k + 1..=80);
        let seed = rng.gen();
        r.case((|| {
            let t = random_branching_tree(n, k, seed)?;
            let i = t.internal_count();
            ensure(n >= min_order_for_internals(i, k) && i <= max_internal_count(n, k), || {
                format!("n = {n}, k = {k} has {i} internal vertices")
            })?;
            ensure(t.leaf_count() >= min_leaf_count(n, k), || {
                format!("n = {n}, k = {k} has only {} leaves", t.leaf_count())
            })
        })());
    }
}

fn branching_schedule(cfg: &SuiteConfig, r: &mut SuiteReport) {
    let mut rng = stream(cfg, 4);
    for i in 0..cfg.trees {
        let k = 3 + i % 4;
        // every fourth instance is small enough for the exact solver
        let n = if i % 4 == 0 { rng.gen_range(k + 1..=16) } else { rng.gen_range(k + 1..=80) };
        let seed = rng.gen();
        r.case((|| {
            let t = random_branching_tree(n, k, seed)?;
            let c = burn_branching_tree(&t, k)?;
            c.verify(t.graph())?;
            let bound = branching_bound(n, k).expect("k >= 3");
            ensure(c.claimed_rounds <= bound, || format!("n = {n}, k = {k}: {} > {bound}", c.claimed_rounds))?;
            for rec in &c.recursion_log {
                if let crate::schedule::LevelCase::Split { sub_bound, .. } = rec.case {
                    ensure(sub_bound < rec.bound, || format!("split level keeps bound {}", rec.bound))?;
                }
            }
            if n <= 16 {
                let b = exact_b(t.graph())?;
                ensure(b <= c.claimed_rounds, || format!("exact {b} above schedule {}", c.claimed_rounds))?;
            }
            Ok(())
        })());
    }
}

fn contraction(cfg: &SuiteConfig, r: &mut SuiteReport) {
    let mut rng = stream(cfg, 5);
    for _ in 0..cfg.trees {
        let k = rng.gen_range(3..=5);
        let n = rng.gen_range(2 * k - 1..=13);
        let seed = rng.gen();
        r.case((|| {
            let (t, y, z) = contraction_instance(n, k, seed)?;
            let (contracted, _) = t.contract_edge(y, z)?;
            let with_y = exact_modified_burning_number(t.graph(), &[y], default_round_budget(n))?.value;
            let plain = exact_b(contracted.graph())?;
            ensure(with_y <= plain, || format!("b^{{{y}}}(T) = {with_y} > b(T/{y}{z}) = {plain}"))?;
            let c = burn_branching_modified(&t, k, y)?;
            ensure(c.claimed_rounds >= with_y, || "modified schedule beats the optimum".into())
        })());
    }
}

fn modified_burning(cfg: &SuiteConfig, r: &mut SuiteReport) {
    let mut rng = stream(cfg, 6);
    for _ in 0..cfg.trees {
        let n = rng.gen_range(1..=14);
        let seed = rng.gen();
        let u = rng.gen_range(0..n);
        r.case((|| {
            let t = random_tree(n, seed)?;
            let budget = default_round_budget(n);
            let with_u = exact_modified_burning_number(t.graph(), &[u], budget)?.value;
            let plain = exact_b(t.graph())?;
            ensure(with_u <= plain, || format!("b^{{{u}}} = {with_u} > b = {plain}"))
        })());
    }
}

fn leafstrip(cfg: &SuiteConfig, r: &mut SuiteReport) {
    let mut rng = stream(cfg, 7);
    for _ in 0..cfg.trees {
        let k = rng.gen_range(3..=5);
        let n = rng.gen_range(k + 1..=60);
        let seed = rng.gen();
        r.case((|| {
            let t = random_branching_tree(n, k, seed)?;
            let exact = leafstrip_schedule(&t, k, InnerStrategy::Exact)?;
            let (kept, _) = crate::decomp::strip_leaves(&t)?;
            let inner = exact_b(kept.graph())?;
            ensure(exact.claimed_rounds <= inner + 1, || {
                format!("leaf-strip schedule {} above b(T') + 1 = {}", exact.claimed_rounds, inner + 1)
            })?;
            leafstrip_schedule(&t, k, InnerStrategy::Recursive)?.verify(t.graph())
        })());
    }
}

fn spanning_extraction(cfg: &SuiteConfig, r: &mut SuiteReport) {
    let mut rng = stream(cfg, 8);
    for _ in 0..cfg.trees {
        let n = rng.gen_range(2..=60);
        let seed = rng.gen();
        r.case((|| {
            let t = random_tree(n, seed)?;
            let diam = diameter(t.graph())?;
            for k in (2..=4).filter(|&k| k < diam) {
                let (s, log) = extract_branching_spanning_tree(&t, k)?;
                log.verify(&t, k)?;
                ensure(log.levels.len() <= n / k, || format!("{} peeling levels for n = {n}", log.levels.len()))?;
                ensure(s.is_k_branching(k + 1), || format!("extracted tree is not {}+-branching", k + 1))?;
                let tk = graph_power(t.graph(), k)?;
                ensure(s.graph().edges().iter().all(|&(u, v)| tk.has_edge(u, v)), || {
                    format!("extracted tree leaves the {k}-th power")
                })?;
            }
            Ok(())
        })());
    }
}

fn square_burning(cfg: &SuiteConfig, r: &mut SuiteReport) {
    let mut rng = stream(cfg, 9);
    for _ in 0..cfg.trees {
        let n = rng.gen_range(2..=20);
        let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(2 * n));
        let seed = rng.gen();
        r.case((|| {
            let g = random_connected_graph(n, m, seed)?;
            let bound = ceil_sqrt_frac(n as u128, 1) as usize;
            let b = exact_b(&graph_power(&g, 2)?)?;
            ensure(b <= bound, || format!("b(G^2) = {b} > {bound}"))?;
            if diameter(&g)? >= 2 {
                let c = burn_graph_power(&g, 2)?;
                ensure(c.certificate.claimed_rounds <= bound, || {
                    format!("pipeline used {} > {bound} rounds", c.certificate.claimed_rounds)
                })?;
            }
            Ok(())
        })());
    }
}

fn power_schedule(cfg: &SuiteConfig, r: &mut SuiteReport) {
    let mut rng = stream(cfg, 10);
    for _ in 0..cfg.trees {
        let n = rng.gen_range(3..=40);
        let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(n + n / 2));
        let seed = rng.gen();
        r.case((|| {
            let g = random_connected_graph(n, m, seed)?;
            for k in 2..=diameter(&g)? {
                let c = burn_graph_power(&g, k)?;
                let gk = graph_power(&g, k)?;
                c.certificate.verify(&gk)?;
                let bound = power_bound(n, k).expect("k >= 2");
                ensure(c.certificate.claimed_rounds <= bound, || format!("k = {k}: above {bound}"))?;
                if n <= 14 {
                    let b = exact_b(&gk)?;
                    ensure(b <= c.certificate.claimed_rounds, || format!("k = {k}: exact {b} above schedule"))?;
                }
            }
            Ok(())
        })());
    }
}

fn no_high_branching(_: &SuiteConfig, r: &mut SuiteReport) {
    let search = SpanningSearch::default();
    for k in 2..=4 {
        // the k-th power of a path on 2k + 2 vertices
        r.case((|| {
            let g = graph_power(path(2 * k + 2)?.graph(), k)?;
            ensure(verify_no_branching_spanning_tree(&g, k + 2, search)?, || {
                format!("P_{}^{k} has a {}+-branching spanning tree", 2 * k + 2, k + 2)
            })?;
            ensure(!verify_no_branching_spanning_tree(&g, k + 1, search)?, || {
                format!("P_{}^{k} lacks a {}+-branching spanning tree", 2 * k + 2, k + 1)
            })
        })());
    }
    r.case((|| {
        ensure(!verify_no_branching_spanning_tree(star(6)?.graph(), 5, search)?, || "star(6) rejected".into())
    })());
}

fn caterpillar_lower(cfg: &SuiteConfig, r: &mut SuiteReport) {
    let mut rng = stream(cfg, 11);
    for _ in 0..cfg.trees {
        let k = rng.gen_range(2..=4);
        let n = rng.gen_range(k + 1..=25);
        let seed = rng.gen();
        r.case((|| {
            let t = caterpillar_branching(n, k, seed)?;
            let lb = caterpillar_lower_bound(n, k).expect("k >= 2");
            let b = exact_b(t.graph())?;
            ensure(b >= lb, || format!("caterpillar n = {n}, k = {k}: b = {b} < {lb}"))
        })());
    }
}

fn spanning_subtree(cfg: &SuiteConfig, r: &mut SuiteReport) {
    let mut rng = stream(cfg, 12);
    for _ in 0..cfg.trees {
        let n = rng.gen_range(2..=9);
        let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(12));
        let seed = rng.gen();
        r.case((|| {
            let g = random_connected_graph(n, m, seed)?;
            let b = exact_b(&g)?;
            let mut best = usize::MAX;
            for t in all_spanning_trees(&g, 12)? {
                best = best.min(exact_b(t.graph())?);
            }
            ensure(best == b, || format!("best spanning tree burns in {best}, graph in {b}"))
        })());
    }
}
