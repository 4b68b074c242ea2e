//! Closed-form burning-number bounds, evaluated in exact integer arithmetic.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::power::{find_branching_spanning_tree, SpanningSearch};

/// Smallest `m >= 0` with `m^2 * den >= num`, i.e. `ceil(sqrt(num / den))`.
pub fn ceil_sqrt_frac(num: u128, den: u128) -> u128 {
    assert!(den > 0, "denominator must be positive");
    let q = num.div_ceil(den);
    let s = q.isqrt();
    if s * s < q {
        s + 1
    } else {
        s
    }
}

/// Smallest `m >= 0` with `m^2 * d^2 >= a`, i.e. `ceil(sqrt(a) / d)`.
pub fn ceil_sqrt_ratio(a: u128, d: u128) -> u128 {
    ceil_sqrt_frac(a, d * d)
}

/// `ceil(sqrt(4(k-2)n / (k-1)^2))`, the bound for k⁺-branching trees (`k >= 3`).
pub fn branching_bound(n: usize, k: usize) -> Option<usize> {
    (k >= 3).then(|| ceil_sqrt_ratio(4 * (k as u128 - 2) * n as u128, k as u128 - 1) as usize)
}

/// `ceil(sqrt(4(k-1)n / k^2))`, the bound for the `k`-th power of a graph (`k >= 2`).
pub fn power_bound(n: usize, k: usize) -> Option<usize> {
    (k >= 2).then(|| ceil_sqrt_ratio(4 * (k as u128 - 1) * n as u128, k as u128) as usize)
}

/// `ceil(sqrt(4n / (3(k-1)))) + 2`, the leaf-stripping bound (`k >= 2`).
pub fn leafstrip_bound(n: usize, k: usize) -> Option<usize> {
    (k >= 2).then(|| ceil_sqrt_frac(4 * n as u128, 3 * (k as u128 - 1)) as usize + 2)
}

/// `ceil(sqrt(n / (k-1)))`, attained from below by branching caterpillars (`k >= 2`).
pub fn caterpillar_lower_bound(n: usize, k: usize) -> Option<usize> {
    (k >= 2).then(|| ceil_sqrt_frac(n as u128, k as u128 - 1) as usize)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Smallest {
    Branching,
    Leafstrip,
    Tie,
}

/// Every closed-form bound for a given `(n, k)`; fields outside their range of `k` are `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub bound_branching: Option<usize>,
    pub bound_power: Option<usize>,
    pub bound_leafstrip: Option<usize>,
    pub caterpillar_lb: Option<usize>,
    pub exact_b: Option<usize>,
    /// Which tree bound (branching or leaf-strip) is smaller.
    pub smallest: Option<Smallest>,
}

pub fn bound_report(n: usize, k: usize, exact_b: Option<usize>) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    let bound_branching = branching_bound(n, k);
    let bound_leafstrip = if k >= 3 { leafstrip_bound(n, k) } else { None };
    let smallest = match (bound_branching, bound_leafstrip) {
        (Some(a), Some(b)) if a < b => Some(Smallest::Branching),
        (Some(a), Some(b)) if a > b => Some(Smallest::Leafstrip),
        (Some(_), Some(_)) => Some(Smallest::Tie),
        _ => None,
    };
    Ok(BoundReport {
        n,
        k,
        bound_branching,
        bound_power: power_bound(n, k),
        bound_leafstrip,
        caterpillar_lb: caterpillar_lower_bound(n, k),
        exact_b,
        smallest,
    })
}

fn opt_cell(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl BoundReport {
    /// True when the recorded exact value respects both tree upper bounds.
    pub fn is_consistent(&self) -> bool {
        match self.exact_b {
            None => true,
            Some(b) => [self.bound_branching, self.bound_leafstrip].iter().flatten().all(|&u| b <= u),
        }
    }

    pub const CSV_HEADER: &'static str =
        "n,k,bound_branching,bound_power,bound_leafstrip,caterpillar_lb,exact_b,smallest";

    pub fn csv_row(&self) -> String {
        let smallest = match self.smallest {
            Some(Smallest::Branching) => "branching",
            Some(Smallest::Leafstrip) => "leafstrip",
            Some(Smallest::Tie) => "tie",
            None => "",
        };
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.k,
            opt_cell(self.bound_branching),
            opt_cell(self.bound_power),
            opt_cell(self.bound_leafstrip),
            opt_cell(self.caterpillar_lb),
            opt_cell(self.exact_b),
            smallest
        )
    }
}

/// Whether `sqrt(4n(k-2)/(k-1)^2) <= sqrt(4n/(3(k-1))) + 2` holds, decided exactly.
///
/// With `X`, `Y` the two radicands over the common denominator
/// `D = 3(k-1)^2`, the inequality is `X - Y - 4 <= 0` or
/// `(X - Y - 4)^2 <= 16 Y`.
pub fn branching_not_worse(n: u64, k: u64) -> Result<bool> {
    if k < 3 {
        return Err(Error::input("the comparison needs k >= 3"));
    }
    let overflow = || Error::input(format!("n = {n}, k = {k} is too large for exact comparison"));
    let (n, k) = (n as i128, k as i128);
    let km1 = k - 1;
    let a = (|| {
        let x = 12i128.checked_mul(n)?.checked_mul(k - 2)?;
        let y = 4i128.checked_mul(n)?.checked_mul(km1)?;
        x.checked_sub(y)?.checked_sub(12i128.checked_mul(km1)?.checked_mul(km1)?)
    })()
    .ok_or_else(overflow)?;
    if a <= 0 {
        return Ok(true);
    }
    let lhs = a.checked_mul(a).ok_or_else(overflow)?;
    let rhs = (|| 192i128.checked_mul(n)?.checked_mul(km1.checked_pow(3)?))().ok_or_else(overflow)?;
    Ok(lhs <= rhs)
}

/// Largest `n` for which the k⁺-branching bound matches or beats the leaf-strip bound.
pub fn threshold_n(k: usize) -> Result<u64> {
    let k = k as u64;
    if !branching_not_worse(1, k)? {
        return Ok(0);
    }
    // the difference of the two square roots grows like sqrt(n), so the
    // admissible n form an interval starting at 1
    let mut lo = 1u64;
    let mut hi = 2u64;
    while branching_not_worse(hi, k)? {
        lo = hi;
        hi = hi.checked_mul(2).ok_or_else(|| Error::input("threshold search overflow"))?;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if branching_not_worse(mid, k)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// The real-valued closed form `(k-1) [sqrt((k-2)/(k-1)) - 1/sqrt(3)]^-2`.
/// Informational only; [`threshold_n`] is the exact value.
pub fn threshold_closed_form(k: usize) -> f64 {
    let k = k as f64;
    let bracket = ((k - 2.0) / (k - 1.0)).sqrt() - 1.0 / 3f64.sqrt();
    (k - 1.0) / (bracket * bracket)
}

/// The `k` columns of the comparison table.
pub const TABLE1_KS: [usize; 12] = [3, 4, 5, 6, 7, 8, 9, 10, 20, 50, 100, 200];

pub fn table1() -> Vec<(usize, u64)> {
    TABLE1_KS
        .iter()
        .map(|&k| (k, threshold_n(k).expect("table columns are in range")))
        .collect()
}

pub fn table1_csv() -> String {
    let mut out = String::from("k,n\n");
    for (k, n) in table1() {
        let _ = writeln!(out, "{k},{n}");
    }
    out
}

/// Result of a branch-number computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchReport {
    /// `branch(G)` when `exact`, otherwise a lower bound.
    pub value: usize,
    pub exact: bool,
    /// `min{branching bound, leaf-strip bound}` at `k = value`; the
    /// branching term is left out when `value = 2`.
    pub combined_bound: usize,
}

/// `branch(G)`: the largest `k` such that `G` has a k⁺-branching spanning tree.
///
/// Graphs on one or two vertices are rejected: their only spanning tree has
/// no internal vertex, so every `k` qualifies.
pub fn branch_number(g: &Graph, search: SpanningSearch) -> Result<BranchReport> {
    g.require_connected()?;
    let n = g.n();
    if n <= 2 {
        return Err(Error::domain("graphs on at most 2 vertices have unbounded branch number"));
    }
    // a star spanning tree is the best possible
    let (value, exact) = if g.max_degree() == n - 1 {
        (n - 1, true)
    } else if n > search.max_vertices {
        (2, false)
    } else {
        // existence is monotone in k, so binary search between 2 and max degree
        let (mut lo, mut hi) = (2, g.max_degree() + 1);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if find_branching_spanning_tree(g, mid, search)?.is_some() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, true)
    };
    let leafstrip = leafstrip_bound(n, value).expect("value >= 2");
    let combined_bound = match branching_bound(n, value) {
        Some(b) => b.min(leafstrip),
        None => leafstrip,
    };
    Ok(BranchReport { value, exact, combined_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{path, star};
    use crate::graph::graph_power;

    #[test]
    fn ceil_sqrt_examples() {
        assert_eq!(ceil_sqrt_ratio(4 * 118, 2), 11);
        assert_eq!(ceil_sqrt_ratio(0, 1), 0);
        assert_eq!(ceil_sqrt_ratio(4 * 2 * 52, 3), 7);
        assert_eq!(ceil_sqrt_frac(10, 1), 4);
        assert_eq!(ceil_sqrt_frac(9, 1), 3);
    }

    #[test]
    fn ceil_sqrt_is_minimal() {
        for a in 0..2000u128 {
            for d in 1..7u128 {
                let m = ceil_sqrt_ratio(a, d);
                assert!(m * m * d * d >= a);
                assert!(m == 0 || (m - 1) * (m - 1) * d * d < a);
            }
        }
    }

    #[test]
    fn report_examples() {
        let r = bound_report(118, 3, None).unwrap();
        assert_eq!((r.bound_branching, r.bound_leafstrip), (Some(11), Some(11)));
        assert_eq!(r.smallest, Some(Smallest::Tie));
        let r = bound_report(52, 4, None).unwrap();
        assert_eq!((r.bound_branching, r.bound_leafstrip), (Some(7), Some(7)));
        let r = bound_report(1, 3, None).unwrap();
        assert_eq!(r.bound_branching, Some(1));
        let r = bound_report(30, 2, Some(4)).unwrap();
        assert_eq!(r.bound_branching, None);
        assert_eq!(r.bound_leafstrip, None);
        assert_eq!(r.bound_power, Some(6));
        assert_eq!(r.caterpillar_lb, Some(6));
        assert!(r.is_consistent());
        assert!(!bound_report(118, 3, Some(12)).unwrap().is_consistent());
        assert!(bound_report(0, 3, None).is_err());
    }

    #[test]
    fn table_values() {
        let expected = [118, 52, 48, 49, 53, 57, 62, 67, 121, 288, 567, 1127];
        let got: Vec<u64> = table1().into_iter().map(|(_, n)| n).collect();
        assert_eq!(got, expected);
        assert!(threshold_n(2).is_err());
    }

    #[test]
    fn threshold_is_a_sharp_boundary() {
        for k in TABLE1_KS {
            let t = threshold_n(k).unwrap();
            assert!(branching_not_worse(t, k as u64).unwrap());
            assert!(!branching_not_worse(t + 1, k as u64).unwrap());
            assert!((threshold_closed_form(k) - t as f64).abs() < 1.0);
        }
    }

    #[test]
    fn branch_numbers() {
        assert_eq!(branch_number(star(7).unwrap().graph(), SpanningSearch::default()).unwrap().value, 6);
        let p6 = path(6).unwrap();
        let r = branch_number(p6.graph(), SpanningSearch::default()).unwrap();
        assert_eq!((r.value, r.exact), (2, true));
        assert_eq!(r.combined_bound, leafstrip_bound(6, 2).unwrap());
        let sq = graph_power(p6.graph(), 2).unwrap();
        let r = branch_number(&sq, SpanningSearch::default()).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(r.combined_bound, 3.min(leafstrip_bound(6, 3).unwrap()));
        assert!(branch_number(path(2).unwrap().graph(), SpanningSearch::default()).is_err());
    }
}
