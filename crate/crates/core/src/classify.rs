//! Combinatorial bounds for nearly free arrangements with only nodes and
//! triple points, and the sweep that enumerates candidate `(d; t2, t3)`.
//!
//! For such an arrangement `mu = t2 + 4 t3 = binom(d, 2) + t3`, so being
//! nearly free with `r = mdr(f)` forces `eta(d, r) = binom(d, 2) + t3 + 1`.
//! The sweep runs over every integer `r` allowed by the lower bound
//! `mdr >= 2d/3 - 2` and the upper bound `mdr <= d/2`, solves for `t3`, and
//! filters by the Schonheim packing bound and a list of known
//! non-realizable combinatorics. All arithmetic is exact integer arithmetic.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::criteria::eta_unchecked;
use crate::error::{Error, Result};
use crate::exec::Execution;

fn binom2(d: i64) -> i64 {
    d * (d - 1) / 2
}

/// Least integer `t3` with `4 t3 >= d^2 - 4d - 1`, clamped at 0.
pub fn t3_lower_bound(d: u32) -> u64 {
    let d = d as i64;
    let num = d * d - 4 * d - 1;
    Integer::div_ceil(&num, &4).max(0) as u64
}

/// `floor(floor((d-1)/2) * d / 3) - eps(d)`, `eps(d) = 1` iff `d = 5 mod 6`.
pub fn schonheim_u3(d: u32) -> u64 {
    if d == 0 {
        return 0;
    }
    let d = d as u64;
    let eps = u64::from(d % 6 == 5);
    (((d - 1) / 2) * d / 3).saturating_sub(eps)
}

/// Integer interval `[lo, hi]` of admissible `mdr` values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MdrWindow {
    pub lo: i64,
    pub hi: i64,
}

impl MdrWindow {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, r: i64) -> bool {
        self.lo <= r && r <= self.hi
    }

    pub fn values(&self) -> impl DoubleEndedIterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for MdrWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)?;
        if self.is_empty() {
            f.write_str(" (empty)")?;
        }
        Ok(())
    }
}

/// `[max(1, ceil(2d/3 - 2)), floor(d/2)]`.
pub fn mdr_window(d: u32) -> MdrWindow {
    let d = d as i64;
    MdrWindow { lo: Integer::div_ceil(&(2 * d - 6), &3).max(1), hi: d / 2 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CandidateStatus {
    Admissible,
    ExcludedBySchonheim,
    ExcludedNonrealizable,
    ExcludedNoIntegerRoot,
}

impl fmt::Display for CandidateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CandidateStatus::Admissible => "Admissible",
            CandidateStatus::ExcludedBySchonheim => "ExcludedBySchonheim",
            CandidateStatus::ExcludedNonrealizable => "ExcludedNonrealizable",
            CandidateStatus::ExcludedNoIntegerRoot => "ExcludedNoIntegerRoot",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateRecord {
    pub d: u32,
    pub t2: i64,
    pub t3: i64,
    /// The `mdr` value for which `(t2, t3)` solves the nearly free equation.
    pub r: u32,
    pub status: CandidateStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
}

impl CandidateRecord {
    pub fn is_admissible(&self) -> bool {
        self.status == CandidateStatus::Admissible
    }
}

impl fmt::Display for CandidateRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}, {}) r={} {}", self.d, self.t2, self.t3, self.r, self.status)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub d: u32,
    pub t2: i64,
    pub t3: i64,
    pub citation: String,
}

/// Weak combinatorics known not to be realizable by lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExclusionConfig {
    pub nonrealizable: Vec<Exclusion>,
}

pub const NINE_LINES_CITATION: &str = "the unique rank-3 matroid on 9 elements with 11 three-point \
     lines is not realizable over any field (Dress-Wenzel valuation criterion fails)";

impl Default for ExclusionConfig {
    fn default() -> Self {
        ExclusionConfig {
            nonrealizable: vec![Exclusion { d: 9, t2: 3, t3: 11, citation: NINE_LINES_CITATION.to_string() }],
        }
    }
}

impl ExclusionConfig {
    pub fn empty() -> Self {
        ExclusionConfig { nonrealizable: Vec::new() }
    }

    pub fn find(&self, d: u32, t2: i64, t3: i64) -> Option<&Exclusion> {
        self.nonrealizable.iter().find(|e| e.d == d && e.t2 == t2 && e.t3 == t3)
    }

    /// One `d t2 t3 # citation` per line; blank lines and `#` lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut nonrealizable = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let (data, citation) = match raw.split_once('#') {
                Some((data, c)) => (data.trim(), c.trim().to_string()),
                None => (raw.trim(), String::new()),
            };
            if data.is_empty() {
                continue;
            }
            let err = |message: String| Error::FileSyntax { line: n + 1, message };
            let nums = data
                .split_whitespace()
                .map(i64::from_str)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| err(e.to_string()))?;
            let [d, t2, t3] = nums[..] else {
                return Err(err(format!("expected `d t2 t3`, found {} numbers", nums.len())));
            };
            let d = u32::try_from(d).map_err(|_| err(format!("invalid line count {d}")))?;
            nonrealizable.push(Exclusion { d, t2, t3, citation });
        }
        Ok(ExclusionConfig { nonrealizable })
    }
}

/// Every `(t2, t3)` solving the nearly free equation for some `r` in the
/// window, with its status. Ordered by `t3`; repeated combinatorics keep the
/// largest `r`.
pub fn enumerate_candidates(d: u32, config: &ExclusionConfig) -> Vec<CandidateRecord> {
    let di = d as i64;
    let pairs = binom2(di);
    let u3 = schonheim_u3(d) as i64;
    let mut out: Vec<CandidateRecord> = Vec::new();
    for r in mdr_window(d).values().rev() {
        let mu = eta_unchecked(di, r) - 1;
        let t3 = mu - pairs;
        let t2 = pairs - 3 * t3;
        if out.iter().any(|c| c.t2 == t2 && c.t3 == t3) {
            continue;
        }
        let (status, citation) = if t3 < 0 || t2 < 0 || t3 > u3 {
            (CandidateStatus::ExcludedBySchonheim, None)
        } else if let Some(e) = config.find(d, t2, t3) {
            (CandidateStatus::ExcludedNonrealizable, Some(e.citation.clone()))
        } else {
            (CandidateStatus::Admissible, None)
        };
        out.push(CandidateRecord { d, t2, t3, r: r as u32, status, citation });
    }
    out.sort_by_key(|c| c.t3);
    out
}

/// The largest `r` in the window with `eta(d, r) = t2 + 4 t3 + 1`, if any.
pub fn has_integer_root(d: u32, t2: i64, t3: i64) -> Result<Option<u32>> {
    let di = d as i64;
    let expected = binom2(di);
    let found = t2 + 3 * t3;
    if found != expected {
        return Err(Error::PairsIdentityViolated { expected, found });
    }
    let target = t2 + 4 * t3 + 1;
    Ok(mdr_window(d).values().rev().find(|&r| eta_unchecked(di, r) == target).map(|r| r as u32))
}

/// [`enumerate_candidates`] over `d_min..=d_max`, ascending in `d`.
pub fn classify_all(d_min: u32, d_max: u32, config: &ExclusionConfig) -> Result<Vec<CandidateRecord>> {
    classify_all_with(d_min, d_max, config, Execution::default())
}

pub fn classify_all_with(
    d_min: u32,
    d_max: u32,
    config: &ExclusionConfig,
    execution: Execution,
) -> Result<Vec<CandidateRecord>> {
    if d_min < 2 || d_min > d_max {
        return Err(Error::OutOfRange(format!("need 2 <= dmin <= dmax, got dmin = {d_min}, dmax = {d_max}")));
    }
    let ds: Vec<u32> = (d_min..=d_max).collect();
    Ok(execution.map(&ds, |&d| enumerate_candidates(d, config)).into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub d: u32,
    pub t3_lower_bound: u64,
    pub u3: u64,
    pub mdr_window: MdrWindow,
    pub consistent: bool,
    pub reasons: Vec<String>,
}

/// Checks the chain `t3_lower_bound(d) <= t3 <= U3(d)` and the mdr window.
pub fn bounds(d: u32) -> Result<BoundsReport> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("need d >= 2, got {d}")));
    }
    let lower = t3_lower_bound(d);
    let u3 = schonheim_u3(d);
    let window = mdr_window(d);
    let mut reasons = Vec::new();
    if lower > u3 {
        reasons.push(format!("t3 lower bound {lower} exceeds Schonheim bound {u3}"));
    }
    if window.is_empty() {
        reasons.push(format!("mdr window {window} is empty"));
    }
    Ok(BoundsReport { d, t3_lower_bound: lower, u3, mdr_window: window, consistent: reasons.is_empty(), reasons })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn lower_bounds() {
        assert_eq!(t3_lower_bound(7), 5);
        assert_eq!(t3_lower_bound(9), 11);
        assert_eq!(t3_lower_bound(4), 0);
        assert_eq!(t3_lower_bound(8), 8);
        assert_eq!(t3_lower_bound(2), 0);
        // Independent route: ceil of the exact rational (d^2 - 4d - 1) / 4.
        for d in 2..60i64 {
            let q = Ratio::new(d * d - 4 * d - 1, 4).ceil().to_integer().max(0);
            assert_eq!(t3_lower_bound(d as u32) as i64, q, "d = {d}");
        }
    }

    #[test]
    fn schonheim_values() {
        assert_eq!(schonheim_u3(8), 8);
        assert_eq!(schonheim_u3(5), 2);
        assert_eq!(schonheim_u3(10), 13);
        assert_eq!(schonheim_u3(11), 17);
        assert_eq!(schonheim_u3(12), 20);
        assert_eq!(schonheim_u3(9), 12);
        assert_eq!(schonheim_u3(7), 7);
        // Rational route: floor(floor((d-1)/2) * d / 3) - eps.
        for d in 2..60i64 {
            let half = Ratio::new(d - 1, 2).floor().to_integer();
            let u = Ratio::new(half * d, 3).floor().to_integer() - i64::from(d % 6 == 5);
            assert_eq!(schonheim_u3(d as u32) as i64, u, "d = {d}");
        }
    }

    #[test]
    fn windows() {
        assert_eq!(mdr_window(8), MdrWindow { lo: 4, hi: 4 });
        assert!(mdr_window(11).is_empty());
        assert_eq!(mdr_window(11), MdrWindow { lo: 6, hi: 5 });
        assert_eq!(mdr_window(12), MdrWindow { lo: 6, hi: 6 });
        for d in 13..=40 {
            assert!(mdr_window(d).is_empty(), "d = {d}");
        }
    }

    #[test]
    fn candidates() {
        let c = enumerate_candidates(8, &ExclusionConfig::default());
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].t2, c[0].t3, c[0].r, c[0].status), (4, 8, 4, CandidateStatus::Admissible));

        let c = enumerate_candidates(9, &ExclusionConfig::default());
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].t2, c[0].t3), (3, 11));
        assert_eq!(c[0].status, CandidateStatus::ExcludedNonrealizable);
        assert!(c[0].citation.is_some());

        let c = enumerate_candidates(12, &ExclusionConfig::default());
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].t3, 24);
        assert_eq!(c[0].status, CandidateStatus::ExcludedBySchonheim);

        let c = enumerate_candidates(6, &ExclusionConfig::default());
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].t2, c[0].t3, c[0].r), (6, 3, 3));
    }

    #[test]
    fn integer_roots() {
        assert_eq!(has_integer_root(8, 7, 7).unwrap(), None);
        assert_eq!(has_integer_root(8, 4, 8).unwrap(), Some(4));
        assert_eq!(has_integer_root(6, 6, 3).unwrap(), Some(3));
        assert_eq!(has_integer_root(8, 7, 8), Err(Error::PairsIdentityViolated { expected: 28, found: 31 }));
    }

    #[test]
    fn sweep_agrees_with_integer_root_check() {
        let cfg = ExclusionConfig::empty();
        for d in 2..=14u32 {
            let pairs = binom2(d as i64);
            let emitted: Vec<(i64, i64)> = enumerate_candidates(d, &cfg).iter().map(|c| (c.t2, c.t3)).collect();
            for t3 in 0..=pairs / 3 {
                let t2 = pairs - 3 * t3;
                let root = has_integer_root(d, t2, t3).unwrap();
                assert_eq!(root.is_some(), emitted.contains(&(t2, t3)), "d = {d}, t3 = {t3}");
            }
        }
    }

    #[test]
    fn full_classification() {
        let all = classify_all(4, 12, &ExclusionConfig::default()).unwrap();
        let admissible: Vec<(u32, i64, i64)> =
            all.iter().filter(|c| c.is_admissible()).map(|c| (c.d, c.t2, c.t3)).collect();
        assert_eq!(admissible, vec![(4, 6, 0), (5, 7, 1), (6, 6, 3), (7, 6, 5), (8, 4, 8)]);
        for c in all.iter().filter(|c| c.is_admissible()) {
            assert_eq!(c.t2 + 3 * c.t3, binom2(c.d as i64));
            assert!(c.t3 >= 0 && c.t3 as u64 <= schonheim_u3(c.d));
            assert!(t3_lower_bound(c.d) as i64 <= c.t3 + 1);
        }
        assert!(classify_all(10, 12, &ExclusionConfig::default()).unwrap().iter().all(|c| !c.is_admissible()));
        let nine = classify_all(9, 9, &ExclusionConfig::empty()).unwrap();
        assert_eq!(nine.len(), 1);
        assert!(nine[0].is_admissible());
        assert!(classify_all(5, 4, &ExclusionConfig::default()).is_err());
        assert!(classify_all(1, 4, &ExclusionConfig::default()).is_err());
    }

    #[test]
    fn sequential_and_parallel_sweeps_match() {
        let cfg = ExclusionConfig::default();
        assert_eq!(
            classify_all_with(2, 40, &cfg, Execution::Sequential).unwrap(),
            classify_all_with(2, 40, &cfg, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn bound_reports() {
        for d in [10, 11, 12] {
            assert!(!bounds(d).unwrap().consistent, "d = {d}");
        }
        let b = bounds(11).unwrap();
        assert_eq!((b.t3_lower_bound, b.u3), (19, 17));
        assert!(bounds(9).unwrap().consistent);
        assert!(bounds(2).unwrap().consistent);
        assert!(bounds(1).is_err());
    }

    #[test]
    fn exclusion_file() {
        let cfg = ExclusionConfig::parse("# header\n9 3 11 # matroid database\n\n").unwrap();
        assert_eq!(cfg.nonrealizable.len(), 1);
        assert_eq!(cfg.nonrealizable[0].citation, "matroid database");
        assert_eq!(ExclusionConfig::parse("").unwrap(), ExclusionConfig::empty());
        assert!(matches!(ExclusionConfig::parse("9 3\n"), Err(Error::FileSyntax { line: 1, .. })));
        assert!(ExclusionConfig::parse("9 x 11\n").is_err());
    }
}
