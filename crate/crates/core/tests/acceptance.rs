//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the summary is always printed. The
//! checks replay schedules and compute burning numbers with brute-force
//! oracles written here, not with the library's own validators.

use std::collections::VecDeque;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use burnkit::bounds::{branching_bound, caterpillar_lower_bound, threshold_n, TABLE1_KS};
use burnkit::decomp::{min_leaf_count, min_order_for_internals};
use burnkit::exact::{default_round_budget, exact_burning_number, exact_modified_burning_number};
use burnkit::generators::{
    caterpillar_branching, contraction_instance, path, random_branching_tree, random_connected_graph, random_tree,
    star,
};
use burnkit::power::{
    all_spanning_trees, burn_graph_power, extract_branching_spanning_tree, verify_no_branching_spanning_tree,
    SpanningSearch,
};
use burnkit::schedule::burn_branching_tree;
use burnkit::{graph_power, simulate, BurnSchedule, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

/// Name, check and time limit.
type Criterion = (&'static str, fn() -> Check, Duration);

fn distances(g: &Graph, s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; g.n()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &w in g.neighbors(u) {
            if d[w] == usize::MAX {
                d[w] = d[u] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

fn all_distances(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|v| distances(g, v)).collect()
}

/// Replays sources (and a free initial set) round by round; true when everything burns.
fn burns(g: &Graph, initial: &[usize], sources: &[usize]) -> bool {
    let mut burned = vec![false; g.n()];
    for (i, &s) in sources.iter().enumerate() {
        let mut next = burned.clone();
        for (v, _) in burned.iter().enumerate().filter(|(_, &b)| b) {
            g.neighbors(v).iter().for_each(|&w| next[w] = true);
        }
        next[s] = true;
        if i == 0 {
            initial.iter().for_each(|&u| next[u] = true);
        }
        burned = next;
    }
    burned.iter().all(|&b| b)
}

/// Smallest `t` such that some `x_1..x_t` has balls `N_{t-i}[x_i]` covering everything.
fn brute_burning_number(g: &Graph) -> usize {
    let d = all_distances(g);
    let n = g.n();
    fn cover(d: &[Vec<usize>], t: usize, i: usize, covered: &mut Vec<u32>) -> bool {
        if i == t {
            return covered.iter().all(|&c| c > 0);
        }
        let r = t - 1 - i;
        for x in 0..d.len() {
            for u in 0..d.len() {
                if d[x][u] <= r {
                    covered[u] += 1;
                }
            }
            let ok = cover(d, t, i + 1, covered);
            for u in 0..d.len() {
                if d[x][u] <= r {
                    covered[u] -= 1;
                }
            }
            if ok {
                return true;
            }
        }
        false
    }
    (1..=n).find(|&t| cover(&d, t, 0, &mut vec![0; n])).expect("n rounds always suffice")
}

fn ceil_sqrt(n: usize) -> usize {
    (0..).find(|&m| m * m >= n).unwrap()
}

fn exact(g: &Graph) -> Result<usize, String> {
    exact_burning_number(g, default_round_budget(g.n())).map(|r| r.value).map_err(|e| e.to_string())
}

fn fail<T>(msg: String) -> Result<T, String> {
    Err(msg)
}

fn nine_vertex_tree() -> Check {
    // v1..v9 as 0..8
    let g = Graph::from_edges(9, [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (5, 6), (5, 7), (7, 8)]).unwrap();
    let b = exact(&g)?;
    if b != 3 || brute_burning_number(&g) != 3 {
        return fail(format!("burning number {b}"));
    }
    let sched = BurnSchedule::new(vec![2, 5, 8]).unwrap();
    let trace = simulate(&g, &sched).map_err(|e| e.to_string())?;
    let rounds: Vec<Vec<usize>> = (1..=3).map(|r| trace.burned_in_round(r)).collect();
    if !burns(&g, &[], &[2, 5, 8]) || rounds != [vec![2], vec![0, 1, 3, 5], vec![4, 6, 7, 8]] {
        return fail(format!("(v3, v6, v9) gives rounds {rounds:?}"));
    }
    for a in 0..9 {
        for c in 0..9 {
            if burns(&g, &[], &[a, c]) {
                return fail(format!("({a}, {c}) burns in 2 rounds"));
            }
        }
    }
    Ok("b = 3; (v3, v6, v9) burns by round 3; all 81 two-round schedules fail".into())
}

fn threshold_table() -> Check {
    let expected = [118, 52, 48, 49, 53, 57, 62, 67, 121, 288, 567, 1127];
    let got: Vec<u64> = TABLE1_KS.iter().map(|&k| threshold_n(k).unwrap()).collect();
    if got != expected {
        return fail(format!("got {got:?}"));
    }
    Ok(format!("{got:?}"))
}

fn branching_schedules() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut small, mut tight) = (0, 0);
    for i in 0..300 {
        let k = 3 + i % 4;
        let n = if i % 3 == 0 { rng.gen_range(k + 1..=16) } else { rng.gen_range(k + 1..=80) };
        let t = random_branching_tree(n, k, rng.gen()).unwrap();
        let c = burn_branching_tree(&t, k).map_err(|e| format!("n = {n}, k = {k}: {e}"))?;
        let bound = ceil_sqrt_ratio_oracle(4 * (k - 2) * n, (k - 1) * (k - 1));
        let len = c.schedule.rounds();
        if !burns(t.graph(), &[], c.schedule.sources()) || len > bound {
            return fail(format!("n = {n}, k = {k}: {len} rounds against bound {bound}"));
        }
        if len == bound {
            tight += 1;
        }
        if n <= 16 {
            small += 1;
            let b = exact(t.graph())?;
            if b > len {
                return fail(format!("n = {n}: exact {b} above schedule {len}"));
            }
        }
    }
    Ok(format!("300 trees valid and within bound ({tight} at the bound); {small} checked against exact b"))
}

/// Smallest `m` with `m^2 * den >= num`.
fn ceil_sqrt_ratio_oracle(num: usize, den: usize) -> usize {
    (0..).find(|&m| m * m * den >= num).unwrap()
}

fn square_burning() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut piped = 0;
    for _ in 0..100 {
        let n = rng.gen_range(2..=20);
        let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(2 * n));
        let g = random_connected_graph(n, m, rng.gen()).unwrap();
        let bound = ceil_sqrt(n);
        let g2 = graph_power(&g, 2).unwrap();
        let b = exact(&g2)?;
        if b > bound {
            return fail(format!("n = {n}, m = {m}: b(G^2) = {b} > {bound}"));
        }
        let diam = all_distances(&g).iter().flatten().copied().max().unwrap();
        if diam >= 2 {
            let c = burn_graph_power(&g, 2).map_err(|e| e.to_string())?;
            let s = c.certificate.schedule.sources();
            if !burns(&g2, &[], s) || s.len() > bound {
                return fail(format!("n = {n}: pipeline used {} rounds", s.len()));
            }
            piped += 1;
        }
    }
    Ok(format!("100 graphs within ceil(sqrt n); pipeline checked on {piped} with diameter >= 2"))
}

fn spanning_extraction() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut runs = 0;
    for _ in 0..200 {
        let n = rng.gen_range(2..=60);
        let t = random_tree(n, rng.gen()).unwrap();
        let d = all_distances(t.graph());
        let diam = d.iter().flatten().copied().max().unwrap();
        for k in (2..=4).filter(|&k| k < diam) {
            runs += 1;
            let (s, log) = extract_branching_spanning_tree(&t, k).map_err(|e| e.to_string())?;
            let sg = s.graph();
            let spanning = sg.n() == n && sg.edge_count() == n - 1 && distances(sg, 0).iter().all(|&x| x != usize::MAX);
            let branching = (0..n).all(|v| sg.degree(v) <= 1 || sg.degree(v) > k);
            let short = sg.edges().iter().all(|&(u, v)| d[u][v] <= k);
            let levels = log.levels.iter().all(|l| l.removed.len() >= k);
            if !(spanning && branching && short && levels) {
                return fail(format!(
                    "n = {n}, k = {k}: spanning {spanning}, branching {branching}, short edges {short}, levels {levels}"
                ));
            }
        }
    }
    Ok(format!("{runs} extractions spanning, (k+1)-branching, short-edged, with levels of >= k vertices"))
}

fn no_high_branching() -> Check {
    let s = SpanningSearch::default();
    let p6 = graph_power(path(6).unwrap().graph(), 2).unwrap();
    let p8 = graph_power(path(8).unwrap().graph(), 3).unwrap();
    let checks = [
        verify_no_branching_spanning_tree(&p6, 4, s),
        verify_no_branching_spanning_tree(&p8, 5, s),
        verify_no_branching_spanning_tree(star(6).unwrap().graph(), 5, s).map(|b| !b),
    ];
    match checks {
        [Ok(true), Ok(true), Ok(true)] => {
            Ok("P_6^2 has no 4+-tree, P_8^3 has no 5+-tree, star(6) is its own 5+-tree".into())
        }
        other => fail(format!("{other:?}")),
    }
}

fn contraction() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let k = rng.gen_range(3..=5);
        let n = rng.gen_range(2 * k - 1..=13);
        let (t, y, z) = contraction_instance(n, k, rng.gen()).map_err(|e| e.to_string())?;
        let (c, _) = t.contract_edge(y, z).unwrap();
        let with_y = exact_modified_burning_number(t.graph(), &[y], n).map_err(|e| e.to_string())?;
        if !burns(t.graph(), &[y], with_y.witness.sources()) {
            return fail("modified witness does not replay".into());
        }
        let plain = brute_burning_number(c.graph());
        if with_y.value > plain {
            return fail(format!("n = {n}, k = {k}: b^y(T) = {} > b(T') = {plain}", with_y.value));
        }
    }
    Ok("100 instances with b^{y}(T) <= b(T/yz)".into())
}

fn counting() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let k = rng.gen_range(3..=6);
        let n = rng.gen_range(k + 1..=80);
        let t = random_branching_tree(n, k, rng.gen()).unwrap();
        let internal = (0..n).filter(|&v| t.degree(v) >= 2).count();
        let leaves = n - internal;
        let min_leaves = (n * (k - 2)).div_ceil(k - 1);
        if n < internal * (k - 1) + 2 || n < min_order_for_internals(internal, k) || leaves < min_leaves {
            return fail(format!("n = {n}, k = {k}: {internal} internal, {leaves} leaves"));
        }
        if min_leaf_count(n, k) != min_leaves {
            return fail(format!("leaf formula disagrees at n = {n}, k = {k}"));
        }
    }
    Ok("500 trees satisfy the internal-vertex and leaf counts".into())
}

fn caterpillars() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for i in 0..50 {
        let k = 2 + i % 3;
        let n = rng.gen_range(k + 1..=25);
        let t = caterpillar_branching(n, k, rng.gen()).unwrap();
        let lb = ceil_sqrt_ratio_oracle(n, k - 1);
        let b = exact(t.graph())?;
        if b < lb || caterpillar_lower_bound(n, k) != Some(lb) {
            return fail(format!("n = {n}, k = {k}: b = {b}, lower bound {lb}"));
        }
    }
    Ok("50 caterpillars at or above ceil(sqrt(n/(k-1)))".into())
}

fn spanning_subtrees() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..30 {
        let n = rng.gen_range(2..=9);
        let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(12));
        let g = random_connected_graph(n, m, rng.gen()).unwrap();
        let b = brute_burning_number(&g);
        let trees = all_spanning_trees(&g, 12).map_err(|e| e.to_string())?;
        let best = trees.iter().map(|t| exact(t.graph())).collect::<Result<Vec<_>, _>>()?.into_iter().min().unwrap();
        if best != b || exact(&g)? != b {
            return fail(format!("n = {n}, m = {m}: best tree {best}, graph {b}"));
        }
    }
    Ok("30 graphs: best spanning tree matches b(G)".into())
}

fn known_values() -> Check {
    for n in 1..=25 {
        let b = exact(path(n).unwrap().graph())?;
        if b != ceil_sqrt(n) {
            return fail(format!("b(P_{n}) = {b}"));
        }
    }
    for n in 2..=20 {
        if exact(star(n).unwrap().graph())? != 2 {
            return fail(format!("b(star({n})) != 2"));
        }
    }
    for n in 2..=10 {
        if exact(&Graph::complete(n).unwrap())? != 2 {
            return fail(format!("b(K_{n}) != 2"));
        }
    }
    if branching_bound(1, 3) != Some(1) {
        return fail("single-vertex bound".into());
    }
    Ok("paths, stars and complete graphs match".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("nine-vertex tree burns in exactly 3 rounds", nine_vertex_tree, Duration::from_secs(1)),
        ("threshold table", threshold_table, Duration::from_secs(1)),
        ("k+-branching schedules meet the bound", branching_schedules, Duration::from_secs(60)),
        ("squares of graphs burn within ceil(sqrt n)", square_burning, Duration::from_secs(120)),
        ("branching spanning trees of tree powers", spanning_extraction, Duration::from_secs(30)),
        ("no overly branching spanning trees", no_high_branching, Duration::from_secs(10)),
        ("contraction keeps the modified number low", contraction, Duration::from_secs(60)),
        ("internal-vertex and leaf counts", counting, Duration::from_secs(10)),
        ("caterpillar lower bound", caterpillars, Duration::from_secs(60)),
        ("burning number attained by a spanning tree", spanning_subtrees, Duration::from_secs(120)),
        ("known burning numbers", known_values, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if took <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {took:.2?}, limit {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} [{:>2}] {name} ({took:.2?}): {detail}", i + 1);
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
