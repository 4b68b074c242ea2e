//! The burning process: schedules, simulation and validation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// An ordered source list `b_1..b_t`, optionally with a set `U` burned for
/// free in round 1 alongside `b_1` (modified burning).
///
/// Sources may repeat or name already-burned vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ScheduleJson", try_from = "ScheduleJson")]
pub struct BurnSchedule {
    sources: Vec<usize>,
    initial_set: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ScheduleJson {
    sources: Vec<usize>,
    #[serde(default)]
    initial_set: Vec<usize>,
    rounds: usize,
}

impl From<BurnSchedule> for ScheduleJson {
    fn from(s: BurnSchedule) -> Self {
        ScheduleJson { rounds: s.sources.len(), sources: s.sources, initial_set: s.initial_set }
    }
}

impl TryFrom<ScheduleJson> for BurnSchedule {
    type Error = Error;

    fn try_from(j: ScheduleJson) -> Result<Self> {
        if j.rounds != j.sources.len() {
            return Err(Error::input(format!(
                "schedule declares {} rounds but lists {} sources",
                j.rounds,
                j.sources.len()
            )));
        }
        BurnSchedule::modified(j.initial_set, j.sources)
    }
}

impl BurnSchedule {
    pub fn new(sources: Vec<usize>) -> Result<Self> {
        Self::modified(Vec::new(), sources)
    }

    /// A modified schedule; `initial_set` is sorted and deduplicated.
    pub fn modified(mut initial_set: Vec<usize>, sources: Vec<usize>) -> Result<Self> {
        if sources.is_empty() {
            return Err(Error::input("a burning schedule needs at least one source"));
        }
        initial_set.sort_unstable();
        initial_set.dedup();
        Ok(BurnSchedule { sources, initial_set })
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn initial_set(&self) -> &[usize] {
        &self.initial_set
    }

    pub fn rounds(&self) -> usize {
        self.sources.len()
    }

    pub fn is_modified(&self) -> bool {
        !self.initial_set.is_empty()
    }

    fn check_range(&self, g: &Graph) -> Result<()> {
        for &v in self.sources.iter().chain(&self.initial_set) {
            g.check_vertex(v)?;
        }
        Ok(())
    }

    /// Maps every vertex through `f` (used to lift schedules out of subtrees).
    pub fn map_vertices(&self, f: impl Fn(usize) -> usize) -> BurnSchedule {
        let mut initial_set: Vec<usize> = self.initial_set.iter().map(|&v| f(v)).collect();
        initial_set.sort_unstable();
        initial_set.dedup();
        BurnSchedule { sources: self.sources.iter().map(|&v| f(v)).collect(), initial_set }
    }
}

/// First round in which each vertex burns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurnTrace {
    /// 1-based burn round, `None` if still unburned after the last round.
    pub burn_round: Vec<Option<usize>>,
    pub rounds_used: usize,
    pub sources: Vec<usize>,
}

impl BurnTrace {
    pub fn is_complete(&self) -> bool {
        self.burn_round.iter().all(Option::is_some)
    }

    pub fn unburned(&self) -> Vec<usize> {
        (0..self.burn_round.len()).filter(|&v| self.burn_round[v].is_none()).collect()
    }

    pub fn burned_in_round(&self, r: usize) -> Vec<usize> {
        (0..self.burn_round.len()).filter(|&v| self.burn_round[v] == Some(r)).collect()
    }

    /// Round in which the last vertex caught fire, if all did.
    pub fn completion_round(&self) -> Option<usize> {
        self.burn_round.iter().copied().try_fold(0, |acc, r| r.map(|r| acc.max(r)))
    }
}

struct Process<'a> {
    g: &'a Graph,
    burn_round: Vec<Option<usize>>,
    last: Vec<usize>,
    round: usize,
}

impl<'a> Process<'a> {
    fn new(g: &'a Graph) -> Self {
        Process { g, burn_round: vec![None; g.n()], last: Vec::new(), round: 0 }
    }

    fn all_burned(&self) -> bool {
        self.burn_round.iter().all(Option::is_some)
    }

    /// Vertices the fire reaches in the next round (unburned neighbours of
    /// last round's burns), sorted.
    fn spread(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .last
            .iter()
            .flat_map(|&u| self.g.neighbors(u))
            .copied()
            .filter(|&v| self.burn_round[v].is_none())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn step(&mut self, spread: Vec<usize>, extra: &[usize]) {
        self.round += 1;
        let mut newly = Vec::new();
        for v in spread.into_iter().chain(extra.iter().copied()) {
            if self.burn_round[v].is_none() {
                self.burn_round[v] = Some(self.round);
                newly.push(v);
            }
        }
        self.last = newly;
    }
}

/// Runs the burning process for `schedule.rounds()` rounds.
pub fn simulate(g: &Graph, schedule: &BurnSchedule) -> Result<BurnTrace> {
    schedule.check_range(g)?;
    let mut p = Process::new(g);
    for (i, &b) in schedule.sources.iter().enumerate() {
        let spread = p.spread();
        if i == 0 {
            let mut first = schedule.initial_set.clone();
            first.push(b);
            p.step(spread, &first);
        } else {
            p.step(spread, &[b]);
        }
    }
    Ok(BurnTrace { burn_round: p.burn_round, rounds_used: p.round, sources: schedule.sources.clone() })
}

/// True when every vertex burns within the schedule's rounds.
pub fn is_valid(g: &Graph, schedule: &BurnSchedule) -> Result<bool> {
    Ok(simulate(g, schedule)?.is_complete())
}

/// Turns a plan with free slots into a concrete schedule.
///
/// A `None` slot takes the smallest-id vertex the fire would not reach that
/// round (or, failing that, the smallest one it does reach). The schedule is
/// cut at the first round that starts with everything already burned.
pub(crate) fn realize(g: &Graph, initial_set: &[usize], slots: &[Option<usize>]) -> Result<BurnSchedule> {
    for &v in initial_set.iter().chain(slots.iter().flatten()) {
        g.check_vertex(v)?;
    }
    let mut p = Process::new(g);
    let mut sources = Vec::with_capacity(slots.len());
    for (i, slot) in slots.iter().enumerate() {
        if i > 0 && p.all_burned() {
            break;
        }
        let spread = p.spread();
        let pick = slot.unwrap_or_else(|| {
            let mut reached = vec![false; g.n()];
            spread.iter().for_each(|&v| reached[v] = true);
            if i == 0 {
                initial_set.iter().for_each(|&v| reached[v] = true);
            }
            (0..g.n())
                .find(|&v| p.burn_round[v].is_none() && !reached[v])
                .or_else(|| spread.first().copied())
                .unwrap_or(0)
        });
        sources.push(pick);
        if i == 0 {
            let mut first = initial_set.to_vec();
            first.push(pick);
            p.step(spread, &first);
        } else {
            p.step(spread, &[pick]);
        }
    }
    BurnSchedule::modified(initial_set.to_vec(), sources)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{path, star};
    use crate::tree::Tree;

    fn nine() -> Graph {
        Tree::from_edges(9, [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (5, 6), (5, 7), (7, 8)])
            .unwrap()
            .into_graph()
    }

    #[test]
    fn nine_vertex_example_rounds() {
        let g = nine();
        let trace = simulate(&g, &BurnSchedule::new(vec![2, 5, 8]).unwrap()).unwrap();
        assert!(trace.is_complete());
        assert_eq!(trace.completion_round(), Some(3));
        assert_eq!(trace.burned_in_round(1), vec![2]);
        assert_eq!(trace.burned_in_round(2), vec![0, 1, 3, 5]);
        assert_eq!(trace.burned_in_round(3), vec![4, 6, 7, 8]);
    }

    #[test]
    fn no_two_round_schedule_on_nine_vertex_example() {
        let g = nine();
        for a in 0..9 {
            for b in 0..9 {
                assert!(!is_valid(&g, &BurnSchedule::new(vec![a, b]).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn trivial_cases() {
        let k1 = Graph::empty(1).unwrap();
        let t = simulate(&k1, &BurnSchedule::new(vec![0]).unwrap()).unwrap();
        assert_eq!(t.burn_round, vec![Some(1)]);

        let p4 = path(4).unwrap();
        let t = simulate(p4.graph(), &BurnSchedule::new(vec![1]).unwrap()).unwrap();
        assert_eq!(t.unburned(), vec![0, 2, 3]);
        assert_eq!(t.completion_round(), None);

        let s = star(6).unwrap();
        for v in 0..6 {
            assert!(is_valid(s.graph(), &BurnSchedule::new(vec![0, v]).unwrap()).unwrap());
        }
    }

    #[test]
    fn repeated_and_burned_sources_allowed() {
        let p3 = path(3).unwrap();
        let s = BurnSchedule::new(vec![1, 1]).unwrap();
        assert!(is_valid(p3.graph(), &s).unwrap());
    }

    #[test]
    fn modified_round_one() {
        let p3 = path(3).unwrap();
        let s = BurnSchedule::modified(vec![1], vec![0, 2]).unwrap();
        let t = simulate(p3.graph(), &s).unwrap();
        assert_eq!(t.burn_round, vec![Some(1), Some(1), Some(2)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BurnSchedule::new(vec![]).is_err());
        let p3 = path(3).unwrap();
        assert_eq!(
            simulate(p3.graph(), &BurnSchedule::new(vec![3]).unwrap()),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert!(simulate(p3.graph(), &BurnSchedule::modified(vec![9], vec![0]).unwrap()).is_err());
    }

    #[test]
    fn json_shape() {
        let s = BurnSchedule::modified(vec![3], vec![0, 2]).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"sources":[0,2],"initial_set":[3],"rounds":2}"#);
        assert_eq!(serde_json::from_str::<BurnSchedule>(&j).unwrap(), s);
        assert!(serde_json::from_str::<BurnSchedule>(r#"{"sources":[0],"rounds":2}"#).is_err());
    }

    #[test]
    fn realize_fills_and_trims() {
        let s = star(5).unwrap();
        let sched = realize(s.graph(), &[], &[Some(0), None, None, None]).unwrap();
        assert_eq!(sched.sources(), &[0, 1]);
        let p2 = path(2).unwrap();
        let sched = realize(p2.graph(), &[], &[None, None]).unwrap();
        assert_eq!(sched.sources(), &[0, 1]);
        assert!(is_valid(p2.graph(), &sched).unwrap());
    }
}
