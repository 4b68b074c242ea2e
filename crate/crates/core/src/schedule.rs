//! Constructive burning schedules for k⁺-branching trees.
//!
//! [`burn_branching_tree`] builds a schedule of at most
//! `ceil(sqrt(4(k-2)n/(k-1)^2))` rounds:
//!
//! - small trees (`n <= 4(k-2)+1`) burn every internal vertex in ascending
//!   order and then one more vertex;
//! - larger trees take a split vertex `x` for the threshold
//!   `p = (k-1)(B-1)` as the first source. Everything on `x`'s side of the
//!   edge `xy` lies within `B-1` of `x`. The far side `T_y(xy)` is handled
//!   as a modified-burning instance with `y` burned in its first round:
//!   it ends immediately when `y` is a leaf or only has leaf neighbours,
//!   is contracted along `yz` when `y` has degree `k-1` there, and is
//!   recursed on directly otherwise.
//!
//! Plans are lists of slots. A free slot is one whose choice does not
//! matter for validity; it is later filled with an unburned vertex (see
//! [`crate::burn`]). Every schedule is replayed before it is returned.

use num_rational::Ratio;
use serde::Serialize;

use crate::bounds::{branching_bound, leafstrip_bound};
use crate::burn::{realize, simulate, BurnSchedule};
use crate::decomp::{find_split_vertex, strip_leaves};
use crate::error::{Error, Result};
use crate::exact::{default_round_budget, exact_burning_number};
use crate::graph::{bfs_distances, Graph};
use crate::tree::Tree;

pub use crate::bounds::ceil_sqrt_ratio;

type Slots = Vec<Option<usize>>;

/// Which guarantee a certificate's `bound_value` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundKind {
    /// `ceil(sqrt(4(k-2)n/(k-1)^2))` for k⁺-branching trees.
    Branching { k: usize },
    /// One round more than the schedule for the stripped tree.
    Leafstrip { k: usize },
    /// An exact optimum.
    Exact,
    /// `ceil(sqrt(4(k-1)n/k^2))` for the `k`-th power of a graph.
    GraphPower { k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "subcase", rename_all = "snake_case")]
pub enum Subcase {
    /// `y` is a leaf, or all its neighbours in `T_y(xy)` are leaves.
    Terminal,
    /// `y` has degree `k-1` in `T_y(xy)`; the edge `yz` was contracted.
    Contracted { z: usize, contracted_n: usize, contracted_bound: usize },
    /// `T_y(xy)` is itself k⁺-branching and was recursed on.
    Direct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerStrategy {
    Exact,
    Recursive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum LevelCase {
    /// Internal vertices burned one by one, then a final free round.
    Internals { internals: Vec<usize> },
    Split {
        x: usize,
        y: usize,
        x_side: usize,
        y_side: usize,
        /// Bound for a tree on `y_side` vertices.
        sub_bound: usize,
        #[serde(flatten)]
        subcase: Subcase,
    },
    /// Leaves removed; the kept tree is burned and one round is added.
    LeafStrip { kept: usize, inner_rounds: usize, strategy: InnerStrategy },
}

/// One level of a construction. Vertex ids refer to the input tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionRecord {
    pub depth: usize,
    pub n: usize,
    pub bound: usize,
    #[serde(flatten)]
    pub case: LevelCase,
}

/// A schedule together with the guarantee it was built against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScheduleCertificate {
    pub schedule: BurnSchedule,
    pub claimed_rounds: usize,
    pub bound_used: BoundKind,
    /// The guaranteed bound for `bound_used`; `claimed_rounds` never exceeds it.
    pub bound_value: usize,
    /// A closed-form bound reported for comparison only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_bound: Option<usize>,
    pub recursion_log: Vec<RecursionRecord>,
}

impl ScheduleCertificate {
    /// Replays the schedule on `g` and checks the claimed length against the bound.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let trace = simulate(g, &self.schedule)?;
        if !trace.is_complete() {
            return Err(Error::defect(format!(
                "schedule leaves {:?} unburned",
                trace.unburned()
            )));
        }
        if self.claimed_rounds != self.schedule.rounds() || self.claimed_rounds > self.bound_value {
            return Err(Error::defect(format!(
                "schedule has {} rounds, claimed {}, bound {}",
                self.schedule.rounds(),
                self.claimed_rounds,
                self.bound_value
            )));
        }
        Ok(())
    }

    fn checked(self, g: &Graph) -> Result<Self> {
        self.verify(g)?;
        Ok(self)
    }
}

/// `ceil(sqrt(4(k-2)n/(k-1)^2))` for `k >= 3`.
fn tree_bound(n: usize, k: usize) -> usize {
    branching_bound(n, k).expect("k >= 3")
}

fn lift(slots: Slots, to_parent: impl Fn(usize) -> usize) -> Slots {
    slots.into_iter().map(|s| s.map(&to_parent)).collect()
}

struct Planner {
    k: usize,
    log: Vec<RecursionRecord>,
}

impl Planner {
    /// Slots (in `t`'s ids) that burn `t` within `tree_bound(|t|, k)` rounds.
    /// `ids` maps `t`'s vertices to the caller's tree for logging.
    fn plan(&mut self, t: &Tree, ids: &[usize], depth: usize) -> Result<Slots> {
        let (n, k) = (t.n(), self.k);
        let bound = tree_bound(n, k);
        if n <= 2 {
            return Ok(if n == 1 { vec![Some(0)] } else { vec![Some(0), None] });
        }
        if n <= 4 * (k - 2) + 1 {
            let internals = t.internal_vertices();
            self.log.push(RecursionRecord {
                depth,
                n,
                bound,
                case: LevelCase::Internals { internals: internals.iter().map(|&v| ids[v]).collect() },
            });
            let mut slots: Slots = internals.into_iter().map(Some).collect();
            slots.push(None);
            return self.within(slots, bound, n);
        }

        let p = (k - 1) * (bound - 1);
        if p < 1 || p + 1 >= n {
            return Err(Error::defect(format!("split threshold {p} outside [1, {}) for n = {n}", n - 1)));
        }
        let cert = find_split_vertex(t, Ratio::from_integer(p as u64))?;
        let (x, y) = (cert.x, cert.large_neighbor());
        let x_side_set = t.component_on_edge_removal(x, y)?;
        let dist = bfs_distances(t.graph(), x)?;
        let x_reach = x_side_set.iter().map(|&v| dist[v]).max().unwrap_or(0);
        if x_reach + 1 > bound {
            return Err(Error::defect(format!("split side of {x} reaches {x_reach} > {}", bound - 1)));
        }

        let y_side_set = t.component_on_edge_removal(y, x)?;
        let (sub, sub_map) = t.induced_subtree(&y_side_set)?;
        let sub_ids: Vec<usize> = sub_map.new_to_old().iter().map(|&v| ids[v]).collect();
        let y_local = sub_map.to_new(y).expect("y lies on its own side");
        let record_at = self.log.len();
        self.log.push(RecursionRecord {
            depth,
            n,
            bound,
            case: LevelCase::Split {
                x: ids[x],
                y: ids[y],
                x_side: x_side_set.len(),
                y_side: y_side_set.len(),
                sub_bound: tree_bound(y_side_set.len(), k),
                subcase: Subcase::Terminal,
            },
        });

        let only_leaf_neighbors = sub.neighbors(y_local).iter().all(|&w| sub.is_leaf(w));
        let (sub_slots, subcase) = if sub.n() == 1 {
            (vec![None], Subcase::Terminal)
        } else if only_leaf_neighbors {
            (vec![None, None], Subcase::Terminal)
        } else if sub.degree(y_local) == k - 1 {
            let z = *sub
                .neighbors(y_local)
                .iter()
                .find(|&&w| !sub.is_leaf(w))
                .expect("checked above");
            let (contracted, cmap) = sub.contract_edge(y_local, z)?;
            let c_ids: Vec<usize> = cmap.new_to_old().iter().map(|&v| sub_ids[v]).collect();
            let slots = self.plan(&contracted, &c_ids, depth + 1)?;
            let subcase = Subcase::Contracted {
                z: sub_ids[z],
                contracted_n: contracted.n(),
                contracted_bound: tree_bound(contracted.n(), k),
            };
            (lift(slots, |v| cmap.to_old(v)), subcase)
        } else {
            (self.plan(&sub, &sub_ids, depth + 1)?, Subcase::Direct)
        };
        if let LevelCase::Split { subcase: s, .. } = &mut self.log[record_at].case {
            *s = subcase;
        }

        let mut slots = vec![Some(x)];
        slots.extend(lift(sub_slots, |v| sub_map.to_old(v)));
        while slots.len() < x_reach + 1 {
            slots.push(None);
        }
        self.within(slots, bound, n)
    }

    fn within(&self, slots: Slots, bound: usize, n: usize) -> Result<Slots> {
        if slots.len() > bound {
            return Err(Error::defect(format!(
                "plan for {n} vertices uses {} rounds, bound {bound}",
                slots.len()
            )));
        }
        Ok(slots)
    }
}

fn require_branching(t: &Tree, k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::input(format!("the branching construction needs k >= 3, got {k}")));
    }
    let bad = t.branching_violations(k);
    if !bad.is_empty() {
        return Err(Error::input(format!(
            "tree is not {k}+-branching: internal vertices {bad:?} have degree below {k}"
        )));
    }
    Ok(())
}

fn plan_branching(t: &Tree, k: usize) -> Result<(Slots, Vec<RecursionRecord>)> {
    let bound = tree_bound(t.n(), k);
    if t.n() == 2 && bound < 2 {
        return Err(Error::domain(format!(
            "the single edge needs 2 rounds but the {k}+-branching bound is {bound}"
        )));
    }
    let mut planner = Planner { k, log: Vec::new() };
    let ids: Vec<usize> = (0..t.n()).collect();
    let slots = planner.plan(t, &ids, 0)?;
    Ok((slots, planner.log))
}

/// A schedule for a k⁺-branching tree (`k >= 3`) within
/// `ceil(sqrt(4(k-2)n/(k-1)^2))` rounds.
///
/// The single edge is rejected for `k >= 8`, where the bound drops to 1.
pub fn burn_branching_tree(t: &Tree, k: usize) -> Result<ScheduleCertificate> {
    require_branching(t, k)?;
    let (slots, log) = plan_branching(t, k)?;
    let schedule = realize(t.graph(), &[], &slots)?;
    ScheduleCertificate {
        claimed_rounds: schedule.rounds(),
        schedule,
        bound_used: BoundKind::Branching { k },
        bound_value: tree_bound(t.n(), k),
        reference_bound: None,
        recursion_log: log,
    }
    .checked(t.graph())
}

/// A modified schedule with `y` burned for free in round 1.
///
/// `t` must be k⁺-branching, or (k-1)⁺-branching with `y` its only
/// vertex of degree `k-1`. In the latter case, when `y` has a non-leaf
/// neighbour `z` the schedule is lifted from the plan for the contracted
/// tree `T/yz` and is no longer than that plan.
pub fn burn_branching_modified(t: &Tree, k: usize, y: usize) -> Result<ScheduleCertificate> {
    t.graph().check_vertex(y)?;
    if k < 3 {
        return Err(Error::input(format!("the branching construction needs k >= 3, got {k}")));
    }
    let bad: Vec<usize> = t
        .branching_violations(k)
        .into_iter()
        .filter(|&v| v != y || t.degree(y) + 1 != k)
        .collect();
    if !bad.is_empty() {
        return Err(Error::input(format!(
            "vertices {bad:?} break the precondition: all internal vertices except {y} need degree >= {k}, and {y} needs degree >= {}",
            k - 1
        )));
    }

    let (slots, bound_value, log) = if t.is_k_branching(k) {
        let (slots, log) = plan_branching(t, k)?;
        (slots, tree_bound(t.n(), k), log)
    } else if let Some(&z) = t.neighbors(y).iter().find(|&&w| !t.is_leaf(w)) {
        let (contracted, map) = t.contract_edge(y, z)?;
        let (slots, mut log) = plan_branching(&contracted, k)?;
        let contracted_len = slots.len();
        for rec in &mut log {
            relabel_record(rec, |v| map.to_old(v));
        }
        (lift(slots, |v| map.to_old(v)), contracted_len, log)
    } else {
        // y is the centre of a star
        (vec![None, None], 2, Vec::new())
    };
    let schedule = realize(t.graph(), &[y], &slots)?;
    ScheduleCertificate {
        claimed_rounds: schedule.rounds(),
        schedule,
        bound_used: BoundKind::Branching { k },
        bound_value,
        reference_bound: None,
        recursion_log: log,
    }
    .checked(t.graph())
}

fn relabel_record(rec: &mut RecursionRecord, f: impl Fn(usize) -> usize) {
    match &mut rec.case {
        LevelCase::Internals { internals } => internals.iter_mut().for_each(|v| *v = f(*v)),
        LevelCase::Split { x, y, subcase, .. } => {
            *x = f(*x);
            *y = f(*y);
            if let Subcase::Contracted { z, .. } = subcase {
                *z = f(*z);
            }
        }
        LevelCase::LeafStrip { .. } => {}
    }
}

/// Burns the stripped tree with `inner` and spends one extra round on the leaves.
///
/// The certificate's `bound_value` is the length of the stripped tree's
/// plan plus one; the closed-form `ceil(sqrt(4n/(3(k-1)))) + 2` is attached as
/// `reference_bound` for comparison.
pub fn leafstrip_schedule(t: &Tree, k: usize, inner: InnerStrategy) -> Result<ScheduleCertificate> {
    require_branching(t, k)?;
    if t.n() < 3 {
        return Err(Error::domain(format!("a tree on {} vertices has no internal vertex to keep", t.n())));
    }
    let mut log = Vec::new();
    let slots = strip_plan(t, inner, 0, &(0..t.n()).collect::<Vec<_>>(), &mut log)?;
    let schedule = realize(t.graph(), &[], &slots)?;
    let bound_value = match log.first() {
        Some(RecursionRecord { case: LevelCase::LeafStrip { inner_rounds, .. }, .. }) => inner_rounds + 1,
        _ => return Err(Error::defect("leaf-strip plan did not record its first level")),
    };
    ScheduleCertificate {
        claimed_rounds: schedule.rounds(),
        schedule,
        bound_used: BoundKind::Leafstrip { k },
        bound_value,
        reference_bound: leafstrip_bound(t.n(), k),
        recursion_log: log,
    }
    .checked(t.graph())
}

/// Strips `t`'s leaves and plans the kept tree. With the recursive
/// strategy the kept tree uses the branching construction when its
/// internal degrees are all at least 3 and is stripped again otherwise.
fn strip_plan(
    t: &Tree,
    inner: InnerStrategy,
    depth: usize,
    ids: &[usize],
    log: &mut Vec<RecursionRecord>,
) -> Result<Slots> {
    let (kept, map) = strip_leaves(t)?;
    let kept_ids: Vec<usize> = map.new_to_old().iter().map(|&v| ids[v]).collect();
    let record_at = log.len();
    log.push(RecursionRecord {
        depth,
        n: t.n(),
        bound: 0,
        case: LevelCase::LeafStrip { kept: kept.n(), inner_rounds: 0, strategy: inner },
    });
    let inner_slots: Slots = match inner {
        InnerStrategy::Exact => {
            let r = exact_burning_number(kept.graph(), default_round_budget(kept.n()))?;
            r.witness.sources().iter().copied().map(Some).collect()
        }
        InnerStrategy::Recursive => match kept.branching_degree() {
            None if kept.n() == 1 => vec![Some(0)],
            None => vec![Some(0), None],
            Some(kk) if kk >= 3 => {
                let mut planner = Planner { k: kk, log: Vec::new() };
                let slots = planner.plan(&kept, &kept_ids, depth + 1)?;
                log.extend(planner.log);
                slots
            }
            Some(_) => strip_plan(&kept, inner, depth + 1, &kept_ids, log)?,
        },
    };
    // the plan length is what is guaranteed; free slots may be filled differently once lifted
    let inner_rounds = inner_slots.len();
    if let RecursionRecord { bound, case: LevelCase::LeafStrip { inner_rounds: r, .. }, .. } = &mut log[record_at] {
        *r = inner_rounds;
        *bound = inner_rounds + 1;
    }
    let mut slots = lift(inner_slots, |v| map.to_old(v));
    slots.push(None);
    Ok(slots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_modified_burning_number;
    use crate::generators::{path, random_branching_tree, star};

    #[test]
    fn star_schedule() {
        let c = burn_branching_tree(&star(6).unwrap(), 5).unwrap();
        assert_eq!(c.schedule.sources(), &[0, 1]);
        assert_eq!(c.bound_value, 3);
    }

    #[test]
    fn random_trees_meet_bound() {
        for (n, k) in [(9, 3), (50, 3), (80, 4), (60, 6), (33, 5)] {
            for seed in 0..25 {
                let t = random_branching_tree(n, k, seed).unwrap();
                let c = burn_branching_tree(&t, k).unwrap();
                assert!(c.claimed_rounds <= ceil_sqrt_ratio((4 * (k - 2) * n) as u128, (k - 1) as u128) as usize);
            }
        }
        let t = random_branching_tree(50, 3, 1).unwrap();
        assert!(burn_branching_tree(&t, 3).unwrap().claimed_rounds <= 8);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(burn_branching_tree(&path(4).unwrap(), 3), Err(Error::Input(_))));
        assert!(matches!(burn_branching_tree(&star(5).unwrap(), 2), Err(Error::Input(_))));
        assert!(matches!(burn_branching_tree(&path(2).unwrap(), 8), Err(Error::Domain(_))));
        assert!(burn_branching_tree(&path(2).unwrap(), 7).is_ok());
        assert_eq!(burn_branching_tree(&path(1).unwrap(), 9).unwrap().claimed_rounds, 1);
    }

    #[test]
    fn split_levels_shrink_the_bound() {
        let t = random_branching_tree(80, 3, 4).unwrap();
        let c = burn_branching_tree(&t, 3).unwrap();
        let splits: Vec<_> = c
            .recursion_log
            .iter()
            .filter_map(|r| match r.case {
                LevelCase::Split { sub_bound, .. } => Some((r.bound, sub_bound)),
                _ => None,
            })
            .collect();
        assert!(!splits.is_empty());
        assert!(splits.iter().all(|&(b, s)| s < b));
    }

    #[test]
    fn modified_examples() {
        let p3 = path(3).unwrap();
        let c = burn_branching_modified(&p3, 3, 1).unwrap();
        assert_eq!(c.schedule.initial_set(), &[1]);
        assert_eq!(c.claimed_rounds, 2);

        let s5 = star(5).unwrap();
        let c = burn_branching_modified(&s5, 5, 0).unwrap();
        assert_eq!(c.claimed_rounds, 2);
        assert_eq!(exact_modified_burning_number(s5.graph(), &[0], 5).unwrap().value, 2);

        // star(6) with k = 5 is already 5+-branching
        let c = burn_branching_modified(&star(6).unwrap(), 5, 3).unwrap();
        assert!(c.claimed_rounds <= 3);

        assert!(burn_branching_modified(&path(5).unwrap(), 3, 2).is_err());
    }

    #[test]
    fn leafstrip_examples() {
        let c = leafstrip_schedule(&star(6).unwrap(), 5, InnerStrategy::Exact).unwrap();
        assert_eq!(c.claimed_rounds, 2);
        assert_eq!(c.reference_bound, Some(4));
        let nine = Tree::from_edges(9, [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (5, 6), (5, 7), (7, 8)]).unwrap();
        assert!(matches!(leafstrip_schedule(&nine, 3, InnerStrategy::Exact), Err(Error::Input(_))));
        for seed in 0..10 {
            let t = random_branching_tree(40, 4, seed).unwrap();
            for inner in [InnerStrategy::Exact, InnerStrategy::Recursive] {
                leafstrip_schedule(&t, 4, inner).unwrap();
            }
        }
    }

    #[test]
    fn certificate_json_has_log() {
        let t = random_branching_tree(40, 3, 2).unwrap();
        let c = burn_branching_tree(&t, 3).unwrap();
        let j = serde_json::to_value(&c).unwrap();
        assert_eq!(j["bound_used"]["kind"], "branching");
        assert!(!j["recursion_log"].as_array().unwrap().is_empty());
        assert_eq!(j["schedule"]["rounds"], c.claimed_rounds);
    }
}
