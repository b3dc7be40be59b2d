//! Brute-force enumeration of Motzkin paths with configurable
//! pattern-and-height statistics.
//!
//! This module is the independent ground truth for every generating
//! function in the crate: it never touches series arithmetic, only
//! literal path scans.

use std::collections::BTreeSet;
use std::fmt;

use num::bigint::BigInt;
use num::traits::One;

use crate::error::OracleError;
use crate::poly::MarkerPoly;

/// Default enumeration cap; n = 18 is about 6.5 million paths.
pub const DEFAULT_CAP: usize = 18;

/// One step of a Motzkin path.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Step {
    Up,
    Horizontal,
    Down,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Step::Up => 'U',
            Step::Horizontal => 'H',
            Step::Down => 'D',
        };
        write!(f, "{c}")
    }
}

/// A Motzkin path: every prefix has at least as many up steps as down
/// steps, and the totals agree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Path {
    steps: Vec<Step>,
}

impl Path {
    /// Validating constructor; `None` if a prefix dips below the axis
    /// or the endpoint is not at height 0.
    pub fn from_steps(steps: Vec<Step>) -> Option<Self> {
        let mut h: i64 = 0;
        for s in &steps {
            h += match s {
                Step::Up => 1,
                Step::Horizontal => 0,
                Step::Down => -1,
            };
            if h < 0 {
                return None;
            }
        }
        (h == 0).then_some(Self { steps })
    }

    /// Parse from a string over U, H, D.
    pub fn parse(s: &str) -> Option<Self> {
        let steps = s
            .chars()
            .map(|c| match c {
                'U' => Some(Step::Up),
                'H' => Some(Step::Horizontal),
                'D' => Some(Step::Down),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Self::from_steps(steps)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Which marker a statistic rule contributes to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Marker {
    Y,
    Z,
}

/// Height condition on the horizontal run of a plateau (the apex for
/// peaks).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HeightPredicate {
    Any,
    Odd,
    AtLeast(u32),
    MultipleOf(u32),
}

impl HeightPredicate {
    pub fn matches(&self, h: u32) -> bool {
        match *self {
            HeightPredicate::Any => true,
            HeightPredicate::Odd => h % 2 == 1,
            HeightPredicate::AtLeast(m) => h >= m,
            HeightPredicate::MultipleOf(m) => h % m == 0,
        }
    }
}

/// Weight a plateau of exact length `run_len` at heights matching the
/// predicate with the given marker.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StatRule {
    pub run_len: usize,
    pub height: HeightPredicate,
    pub marker: Marker,
}

/// A full statistic: marker rules plus plateau lengths whose occurrence
/// anywhere invalidates the path.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct StatisticSpec {
    pub rules: Vec<StatRule>,
    excluded_lengths: BTreeSet<usize>,
    excluded_min_length: Option<usize>,
}

impl StatisticSpec {
    pub fn new() -> Self {
        Self::default()
    }

    /// The classic statistic: plateaus of length r at any height, marker y.
    pub fn plateau(r: usize) -> Self {
        Self::new().with_rule(r, HeightPredicate::Any, Marker::Y)
    }

    pub fn with_rule(mut self, run_len: usize, height: HeightPredicate, marker: Marker) -> Self {
        self.rules.push(StatRule {
            run_len,
            height,
            marker,
        });
        self
    }

    /// Invalidate paths containing a plateau of exactly this length.
    pub fn exclude(mut self, run_len: usize) -> Self {
        self.excluded_lengths.insert(run_len);
        self
    }

    /// Invalidate paths containing any plateau of length >= `run_len`.
    pub fn exclude_at_least(mut self, run_len: usize) -> Self {
        self.excluded_min_length = Some(
            self.excluded_min_length
                .map_or(run_len, |cur| cur.min(run_len)),
        );
        self
    }

    pub fn is_excluded(&self, run_len: usize) -> bool {
        self.excluded_lengths.contains(&run_len)
            || self.excluded_min_length.is_some_and(|m| run_len >= m)
    }
}

/// Walk every Motzkin path of length n in lexicographic order (U < H < D),
/// presenting each as a step slice.
fn walk_paths<F: FnMut(&[Step])>(n: usize, f: &mut F) {
    fn rec<F: FnMut(&[Step])>(buf: &mut Vec<Step>, height: usize, remaining: usize, f: &mut F) {
        if remaining == 0 {
            if height == 0 {
                f(buf);
            }
            return;
        }
        // an up step must leave room to come back down
        if height + 1 <= remaining - 1 {
            buf.push(Step::Up);
            rec(buf, height + 1, remaining - 1, f);
            buf.pop();
        }
        if height <= remaining - 1 {
            buf.push(Step::Horizontal);
            rec(buf, height, remaining - 1, f);
            buf.pop();
        }
        if height > 0 {
            buf.push(Step::Down);
            rec(buf, height - 1, remaining - 1, f);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(n);
    rec(&mut buf, 0, n, f);
}

/// All Motzkin paths of length n, each exactly once, in lexicographic
/// order with U < H < D.
pub fn enumerate(n: usize) -> Result<Vec<Path>, OracleError> {
    enumerate_with_cap(n, DEFAULT_CAP)
}

pub fn enumerate_with_cap(n: usize, cap: usize) -> Result<Vec<Path>, OracleError> {
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    let mut out = Vec::new();
    walk_paths(n, &mut |steps| {
        out.push(Path {
            steps: steps.to_vec(),
        })
    });
    Ok(out)
}

/// Exact-run plateau occurrences: positions i where steps i..=i+r+1 are
/// U H^r D, with the height of the horizontal run (the apex for r = 0).
///
/// Exactness is automatic: a longer horizontal run means the step after
/// the r horizontals is H, not D.
pub fn count_plateaus(path: &Path, r: usize) -> Vec<(usize, u32)> {
    occurrences(path.steps(), r)
}

fn occurrences(steps: &[Step], r: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut height = 0u32;
    for (i, s) in steps.iter().enumerate() {
        if *s == Step::Up
            && i + r + 1 < steps.len()
            && steps[i + 1..=i + r].iter().all(|t| *t == Step::Horizontal)
            && steps[i + r + 1] == Step::Down
        {
            out.push((i, height + 1));
        }
        match s {
            Step::Up => height += 1,
            Step::Horizontal => {}
            Step::Down => height -= 1,
        }
    }
    out
}

/// Every maximal U H^j D pattern in the path: (run length j, start index,
/// height of the run).
fn plateau_runs(steps: &[Step]) -> Vec<(usize, usize, u32)> {
    let mut out = Vec::new();
    let mut height = 0u32;
    for (i, s) in steps.iter().enumerate() {
        if *s == Step::Up {
            let mut j = 0;
            while i + 1 + j < steps.len() && steps[i + 1 + j] == Step::Horizontal {
                j += 1;
            }
            if i + 1 + j < steps.len() && steps[i + 1 + j] == Step::Down {
                out.push((j, i, height + 1));
            }
        }
        match s {
            Step::Up => height += 1,
            Step::Horizontal => {}
            Step::Down => height -= 1,
        }
    }
    out
}

/// Weighted count over all paths of length n: skip paths containing an
/// excluded plateau length, and weight each matching (rule, occurrence)
/// by the rule's marker.
pub fn weighted_count(n: usize, spec: &StatisticSpec) -> Result<MarkerPoly, OracleError> {
    weighted_count_with_cap(n, spec, DEFAULT_CAP)
}

pub fn weighted_count_with_cap(
    n: usize,
    spec: &StatisticSpec,
    cap: usize,
) -> Result<MarkerPoly, OracleError> {
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    let mut total: MarkerPoly = MarkerPoly::zero();
    walk_paths(n, &mut |steps| {
        let runs = plateau_runs(steps);
        if runs.iter().any(|&(j, _, _)| spec.is_excluded(j)) {
            return;
        }
        let mut dy = 0u32;
        let mut dz = 0u32;
        for rule in &spec.rules {
            let hits = runs
                .iter()
                .filter(|&&(j, _, h)| j == rule.run_len && rule.height.matches(h))
                .count() as u32;
            match rule.marker {
                Marker::Y => dy += hits,
                Marker::Z => dz += hits,
            }
        }
        total.add_term(dy, dz, BigInt::one());
    });
    Ok(total)
}

/// Motzkin numbers by the independent recurrence
/// M_n = M_{n-1} + sum_{k=0}^{n-2} M_k M_{n-2-k}.
pub fn motzkin_numbers(nmax: usize) -> Vec<BigInt> {
    let mut m: Vec<BigInt> = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let v = if n == 0 {
            BigInt::one()
        } else {
            let mut v = m[n - 1].clone();
            if n >= 2 {
                for k in 0..=n - 2 {
                    v += &m[k] * &m[n - 2 - k];
                }
            }
            v
        };
        m.push(v);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate(0).unwrap(), vec![Path { steps: vec![] }]);
        let n3: Vec<String> = enumerate(3).unwrap().iter().map(Path::to_string).collect();
        assert_eq!(n3, ["UHD", "UDH", "HUD", "HHH"]);
        assert_eq!(enumerate(5).unwrap().len(), 21);
    }

    #[test]
    fn enumerate_cap() {
        assert_eq!(
            enumerate_with_cap(7, 6),
            Err(OracleError::CapExceeded { n: 7, cap: 6 })
        );
    }

    #[test]
    fn counts_match_motzkin_recurrence() {
        let m = motzkin_numbers(14);
        assert_eq!(m[10], BigInt::from(2188));
        for n in 0..=14 {
            let mut count = 0u64;
            walk_paths(n, &mut |_| count += 1);
            assert_eq!(BigInt::from(count), m[n], "n={n}");
        }
    }

    #[test]
    fn plateau_scan_exact_runs() {
        let p = Path::parse("UHD").unwrap();
        assert_eq!(count_plateaus(&p, 1), vec![(0, 1)]);

        // run of length 2 is not a plateau of length 1
        let p = Path::parse("UHHD").unwrap();
        assert!(count_plateaus(&p, 1).is_empty());
        assert_eq!(count_plateaus(&p, 2), vec![(0, 1)]);

        let p = Path::parse("UUHDD").unwrap();
        assert_eq!(count_plateaus(&p, 1), vec![(1, 2)]);

        // peak scanning (r = 0) reports the apex height
        let p = Path::parse("UUDD").unwrap();
        assert_eq!(count_plateaus(&p, 0), vec![(1, 2)]);
    }

    #[test]
    fn runs_partition_by_length() {
        // at a given start index, only one exact run length can match
        for p in enumerate(9).unwrap() {
            let runs = plateau_runs(p.steps());
            let mut starts: Vec<usize> = runs.iter().map(|&(_, i, _)| i).collect();
            starts.dedup();
            assert_eq!(starts.len(), runs.len(), "path {p}");
        }
    }

    #[test]
    fn weighted_count_row_six() {
        // Plateau statistic at n = 6: 36 + 14y + y^2
        let w = weighted_count(6, &StatisticSpec::plateau(1)).unwrap();
        assert_eq!(w.coeff(0, 0), BigInt::from(36));
        assert_eq!(w.coeff(1, 0), BigInt::from(14));
        assert_eq!(w.coeff(2, 0), BigInt::from(1));
    }

    #[test]
    fn weighted_count_excludes_peaks() {
        // n = 3 with peaks excluded: HHH and UHD survive
        let spec = StatisticSpec::new().exclude(0);
        let w = weighted_count(3, &spec).unwrap();
        assert_eq!(w.coeff(0, 0), BigInt::from(2));
        assert_eq!(w.num_terms(), 1);
    }

    #[test]
    fn weighted_count_empty_path() {
        let w = weighted_count(0, &StatisticSpec::plateau(1)).unwrap();
        assert_eq!(w.coeff(0, 0), BigInt::one());
    }

    #[test]
    fn weighted_totals_are_motzkin() {
        let m = motzkin_numbers(12);
        for n in 0..=12 {
            let w = weighted_count(n, &StatisticSpec::plateau(1)).unwrap();
            let total = w.subst_y_const(1);
            assert_eq!(total.coeff(0, 0), m[n]);
        }
    }

    #[test]
    fn y_degree_bound() {
        for r in 0..=3usize {
            for n in 0..=12usize {
                let w = weighted_count(n, &StatisticSpec::plateau(r)).unwrap();
                assert!(
                    (w.deg_y() as usize) <= n / (r + 2),
                    "r={r} n={n} deg={}",
                    w.deg_y()
                );
            }
        }
    }
}
