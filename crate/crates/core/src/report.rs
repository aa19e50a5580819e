//! End-to-end analyses of arrangements and raw polynomials.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::arrangement::{LineArrangement, ProjectivePoint, WeakCombinatorics};
use crate::criteria::{analyze_curve_with, MdrOptions, Verdict};
use crate::error::Result;
use crate::exec::Execution;
use crate::field::{FieldTag, Scalar};
use crate::poly::{HomogeneousPolynomial, LinearForm};

fn verdict_name<S: Serializer>(v: &Verdict, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(v.name())
}

/// Everything the criteria say about one input.
///
/// `eta - tau` is 0 exactly for `Free` and 1 exactly for `NearlyFree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub input: String,
    pub d: u32,
    pub field: FieldTag,
    pub t2: Option<u64>,
    pub t3: Option<u64>,
    pub t_higher: BTreeMap<u32, u64>,
    pub mu: Option<u64>,
    pub tau: u64,
    pub mdr: Option<u32>,
    pub eta: Option<u64>,
    #[serde(serialize_with = "verdict_name")]
    pub verdict: Verdict,
    pub exponents: Option<(u32, u32)>,
    pub b: Option<i64>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[HomogeneousPolynomial; 3]>,
}

impl AnalysisReport {
    pub fn combinatorics(&self) -> Option<WeakCombinatorics> {
        let mut counts = vec![(2, self.t2?), (3, self.t3?)];
        counts.extend(self.t_higher.iter().map(|(k, n)| (*k, *n)));
        Some(WeakCombinatorics::new(self.d as usize, counts))
    }
}

/// Analyzes an arrangement, using its Milnor number as the Tjurina number.
pub fn analyze_arrangement(arrangement: &LineArrangement, input: &str, options: MdrOptions) -> Result<AnalysisReport> {
    let wc = arrangement.weak_combinatorics();
    let mu = wc.milnor_number();
    let mut report = AnalysisReport {
        input: input.to_string(),
        d: arrangement.len() as u32,
        field: arrangement.coefficient_field(),
        t2: Some(wc.t2()),
        t3: Some(wc.t3()),
        t_higher: wc.higher(),
        mu: Some(mu),
        tau: mu,
        mdr: None,
        eta: None,
        verdict: Verdict::Inapplicable { reason: "fewer than 2 lines: no relation degree".into() },
        exponents: None,
        b: None,
        notes: Vec::new(),
        witness: None,
    };
    if arrangement.len() < 2 {
        report
            .notes
            .push("verdict skipped: an arrangement of fewer than 2 lines has no Jacobian relations to test".into());
        return Ok(report);
    }
    let f = arrangement.defining_polynomial();
    let a = analyze_curve_with(&f, mu, options)?;
    fill(&mut report, a);
    Ok(report)
}

/// Analyzes a raw polynomial with a caller-supplied total Tjurina number.
pub fn analyze_polynomial(
    f: &HomogeneousPolynomial,
    tau: u64,
    input: &str,
    options: MdrOptions,
) -> Result<AnalysisReport> {
    let a = analyze_curve_with(f, tau, options)?;
    let mut report = AnalysisReport {
        input: input.to_string(),
        d: f.degree(),
        field: f.coefficient_field(),
        t2: None,
        t3: None,
        t_higher: BTreeMap::new(),
        mu: None,
        tau,
        mdr: None,
        eta: None,
        verdict: Verdict::Neither,
        exponents: None,
        b: None,
        notes: Vec::new(),
        witness: None,
    };
    fill(&mut report, a);
    Ok(report)
}

fn fill(report: &mut AnalysisReport, a: crate::criteria::CurveAnalysis) {
    report.mdr = Some(a.mdr.r);
    report.eta = Some(a.eta);
    report.exponents = a.verdict.exponents();
    report.b = a.verdict.b();
    report.verdict = a.verdict;
    report.notes.extend(a.notes);
    report.witness = Some(a.mdr.witness);
}

/// Analyzes many arrangements; the outer loop is the parallel axis.
pub fn analyze_batch(
    arrangements: &[(String, LineArrangement)],
    execution: Execution,
    options: MdrOptions,
) -> Vec<Result<AnalysisReport>> {
    execution.map(arrangements, |(name, a)| analyze_arrangement(a, name, options))
}

/// Before/after view of a triple-point deformation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    pub point: ProjectivePoint,
    pub line: usize,
    pub moved_from: LinearForm,
    pub moved_to: LinearForm,
    pub eps: Scalar,
    pub before: AnalysisReport,
    pub after: AnalysisReport,
    /// `tau(before) = tau(after) + 1`.
    pub tau_drop: bool,
    pub eta_preserved: bool,
    /// Free before, `eta` preserved and `mdr <= d/2` after.
    pub hypotheses_hold: bool,
}

pub fn deformation_report(
    original: &LineArrangement,
    deformed: &LineArrangement,
    point: &ProjectivePoint,
    line: usize,
    eps: &Scalar,
    input: &str,
    options: MdrOptions,
) -> Result<DeformationReport> {
    let before = analyze_arrangement(original, input, options)?;
    let after = analyze_arrangement(deformed, &format!("{input} (deformed)"), options)?;
    let eta_preserved = before.eta.is_some() && before.eta == after.eta;
    let hypotheses_hold = before.verdict.is_free() && eta_preserved && after.mdr.is_some_and(|r| 2 * r <= after.d);
    Ok(DeformationReport {
        point: point.clone(),
        line,
        moved_from: original.lines()[line].clone(),
        moved_to: deformed.lines()[line].clone(),
        eps: eps.clone(),
        tau_drop: before.tau == after.tau + 1,
        eta_preserved,
        hypotheses_hold,
        before,
        after,
    })
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), ToString::to_string)
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "input:      {}", self.input)?;
        writeln!(f, "field:      {}", self.field)?;
        writeln!(f, "d:          {}", self.d)?;
        if let Some(wc) = self.combinatorics() {
            writeln!(f, "weak comb.: {wc}")?;
        }
        writeln!(f, "mu:         {}", opt(&self.mu))?;
        writeln!(f, "tau:        {}", self.tau)?;
        writeln!(f, "mdr:        {}", opt(&self.mdr))?;
        writeln!(f, "eta:        {}", opt(&self.eta))?;
        writeln!(f, "verdict:    {}", self.verdict)?;
        if let Some([a, b, c]) = &self.witness {
            writeln!(f, "relation:   ({a}) f_x + ({b}) f_y + ({c}) f_z = 0")?;
        }
        for note in &self.notes {
            writeln!(f, "note:       {note}")?;
        }
        Ok(())
    }
}

impl fmt::Display for DeformationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "deformed line {} through {}: {} -> {} (eps = {})",
            self.line, self.point, self.moved_from, self.moved_to, self.eps
        )?;
        let comb = |r: &AnalysisReport| r.combinatorics().map_or("-".into(), |c| c.to_string());
        writeln!(f, "combinatorics: {} -> {}", comb(&self.before), comb(&self.after))?;
        writeln!(f, "tau:           {} -> {} (drop by one: {})", self.before.tau, self.after.tau, self.tau_drop)?;
        writeln!(
            f,
            "eta:           {} -> {} (preserved: {})",
            opt(&self.before.eta),
            opt(&self.after.eta),
            self.eta_preserved
        )?;
        writeln!(f, "before:        {}", self.before.verdict)?;
        writeln!(f, "after:         {}", self.after.verdict)?;
        if self.hypotheses_hold {
            writeln!(f, "free curve, eta preserved and mdr <= d/2: the deformation is nearly free")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::catalog;
    use crate::field::FieldTag;
    use crate::poly::parse_poly;

    #[test]
    fn mac_lane_report() {
        let r = analyze_arrangement(&catalog("MacLane8").unwrap(), "MacLane8", MdrOptions::default()).unwrap();
        assert_eq!((r.d, r.t2, r.t3, r.mu, r.mdr, r.eta), (8, Some(4), Some(8), Some(36), Some(4), Some(37)));
        assert!(r.verdict.is_nearly_free());
        assert_eq!(r.exponents, Some((4, 4)));
        assert_eq!(r.field, FieldTag::QW);
    }

    #[test]
    fn single_line_is_skipped() {
        let a = catalog("A1_6").unwrap();
        let one = a.delete_line(0).unwrap().delete_line(0).unwrap().delete_line(0).unwrap();
        let one = one.delete_line(0).unwrap().delete_line(0).unwrap();
        let r = analyze_arrangement(&one, "one", MdrOptions::default()).unwrap();
        assert_eq!(r.d, 1);
        assert_eq!(r.mdr, None);
        assert!(matches!(r.verdict, Verdict::Inapplicable { .. }));
        assert!(!r.notes.is_empty());
    }

    #[test]
    fn polynomial_report() {
        let f = parse_poly("y^2*z - x^3", FieldTag::Q).unwrap();
        let r = analyze_polynomial(&f, 2, "cusp", MdrOptions::default()).unwrap();
        assert_eq!(r.verdict.name(), "NearlyFree");
        assert_eq!(r.exponents, Some((1, 2)));
        assert_eq!(r.b, Some(1));
        assert_eq!(r.mu, None);
    }

    #[test]
    fn json_field_names() {
        let r = analyze_arrangement(&catalog("A1_6").unwrap(), "A1_6", MdrOptions::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in
            ["d", "field", "t2", "t3", "t_higher", "mu", "tau", "mdr", "eta", "verdict", "exponents", "b", "notes"]
        {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["verdict"], "Free");
        assert_eq!(v["field"], "Q");
    }
}
