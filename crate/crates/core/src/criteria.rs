//! Minimal degree of a Jacobian relation and the free / nearly free verdicts.
//!
//! `mdr(f)` is the least `r` for which some nonzero triple `(a, b, c)` of
//! degree-`r` forms satisfies `a f_x + b f_y + c f_z = 0`. It is found by
//! computing kernels of the linear maps `S_r^3 -> S_{r+d-1}` for increasing
//! `r`. The verdicts compare `eta = r^2 - r(d-1) + (d-1)^2` with the total
//! Tjurina number.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::Scalar;
use crate::linalg::{Elimination, ExactMatrix};
use crate::poly::{basis_len, graded_basis, HomogeneousPolynomial};

/// Matrix of `(a, b, c) -> a f_x + b f_y + c f_z` on degree-`r` triples.
///
/// Columns are the a-block, b-block and c-block, each in graded-lex order;
/// rows are the graded-lex basis of `S_{r+d-1}`.
pub fn relation_matrix(f: &HomogeneousPolynomial, r: u32) -> Result<ExactMatrix> {
    let d = f.degree();
    if d < 2 || f.is_zero() {
        return Err(Error::InvalidInput("relation matrix needs a nonzero polynomial of degree at least 2".into()));
    }
    let grad = f.gradient()?;
    let source = graded_basis(r);
    let n = source.len();
    let rows = basis_len(r + d - 1);
    let mut m = ExactMatrix::zeros(rows, 3 * n, f.field());
    for (block, partial) in grad.iter().enumerate() {
        for (j, mono) in source.iter().enumerate() {
            for (t, c) in partial.terms() {
                m.set(mono.mul(t).graded_index(), block * n + j, c.clone())?;
            }
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MdrOptions {
    pub execution: Execution,
    pub elimination: Elimination,
}

impl MdrOptions {
    pub fn sequential() -> Self {
        MdrOptions { execution: Execution::Sequential, elimination: Elimination::Gauss }
    }
}

/// Result of the minimal-degree search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MdrResult {
    pub r: u32,
    /// A relation `(a, b, c)` of degree `r`.
    pub witness: [HomogeneousPolynomial; 3],
    /// Kernel dimensions for degrees `0..=r`.
    pub relation_dims: Vec<usize>,
}

impl MdrResult {
    /// Re-checks the witness by polynomial arithmetic.
    pub fn verify(&self, f: &HomogeneousPolynomial) -> Result<bool> {
        let grad = f.gradient()?;
        let mut acc = HomogeneousPolynomial::zero(self.r + f.degree() - 1, f.field());
        for (w, g) in self.witness.iter().zip(&grad) {
            acc = acc.add(&w.mul(g)?)?;
        }
        let nonzero = self.witness.iter().any(|w| !w.is_zero());
        Ok(nonzero && acc.is_zero())
    }
}

fn kernel_at(f: &HomogeneousPolynomial, r: u32, elimination: Elimination) -> Result<Vec<Vec<Scalar>>> {
    Ok(relation_matrix(f, r)?.kernel_basis_with(elimination))
}

/// Kernel dimensions of the relation maps in degrees `0..=max_r`.
pub fn relation_dims(f: &HomogeneousPolynomial, max_r: u32, options: MdrOptions) -> Result<Vec<usize>> {
    let degrees: Vec<u32> = (0..=max_r).collect();
    options
        .execution
        .map(&degrees, |&r| relation_matrix(f, r).map(|m| m.cols() - m.rank_with(options.elimination)))
        .into_iter()
        .collect()
}

pub fn mdr(f: &HomogeneousPolynomial) -> Result<MdrResult> {
    mdr_with(f, MdrOptions::default())
}

/// Searches `r = 0, 1, ...` for the first nonzero relation.
///
/// The search always stops by `r = d - 1`: `(f_y, -f_x, 0)` and its
/// permutations are relations of that degree. In parallel mode pairs of
/// consecutive degrees are evaluated speculatively; the answer is the same
/// minimal `r` as the sequential scan.
pub fn mdr_with(f: &HomogeneousPolynomial, options: MdrOptions) -> Result<MdrResult> {
    let d = f.degree();
    if d < 2 || f.is_zero() {
        return Err(Error::InvalidInput("mdr needs a nonzero polynomial of degree at least 2".into()));
    }
    let width = if options.execution.is_parallel() { 2 } else { 1 };
    let mut dims = Vec::new();
    let mut start = 0;
    while start < d {
        let batch: Vec<u32> = (start..(start + width).min(d)).collect();
        let kernels = options.execution.map(&batch, |&r| kernel_at(f, r, options.elimination));
        for (&r, kernel) in batch.iter().zip(kernels) {
            let kernel = kernel?;
            dims.push(kernel.len());
            if let Some(v) = kernel.into_iter().next() {
                let witness = split_witness(&v, r, f)?;
                return Ok(MdrResult { r, witness, relation_dims: dims });
            }
        }
        start += width;
    }
    unreachable!("a nonzero polynomial always has a relation in degree d - 1")
}

fn split_witness(v: &[Scalar], r: u32, f: &HomogeneousPolynomial) -> Result<[HomogeneousPolynomial; 3]> {
    let basis = graded_basis(r);
    let n = basis.len();
    let block = |k: usize| {
        HomogeneousPolynomial::from_terms(
            r,
            basis.iter().zip(&v[k * n..(k + 1) * n]).map(|(m, c)| (*m, c.clone())),
            f.field(),
        )
    };
    Ok([block(0)?, block(1)?, block(2)?])
}

/// `r^2 - r(d-1) + (d-1)^2`, defined for `0 <= r <= d-1`.
pub fn eta(d: u32, r: u32) -> Result<u64> {
    if d == 0 || r > d - 1 {
        return Err(Error::OutOfRange(format!("eta needs 0 <= r <= d-1, got d = {d}, r = {r}")));
    }
    Ok(eta_unchecked(d as i64, r as i64) as u64)
}

pub(crate) fn eta_unchecked(d: i64, r: i64) -> i64 {
    r * r - r * (d - 1) + (d - 1) * (d - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    Free { exponents: (u32, u32) },
    NearlyFree { exponents: (u32, u32), b: i64 },
    Neither,
    Inapplicable { reason: String },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Free { .. } => "Free",
            Verdict::NearlyFree { .. } => "NearlyFree",
            Verdict::Neither => "Neither",
            Verdict::Inapplicable { .. } => "Inapplicable",
        }
    }

    pub fn exponents(&self) -> Option<(u32, u32)> {
        match self {
            Verdict::Free { exponents } | Verdict::NearlyFree { exponents, .. } => Some(*exponents),
            _ => None,
        }
    }

    pub fn b(&self) -> Option<i64> {
        match self {
            Verdict::NearlyFree { b, .. } => Some(*b),
            _ => None,
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Verdict::Free { .. })
    }

    pub fn is_nearly_free(&self) -> bool {
        matches!(self, Verdict::NearlyFree { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Free { exponents: (a, b) } => write!(f, "Free, exponents ({a},{b})"),
            Verdict::NearlyFree { exponents: (a, c), b } => write!(f, "NearlyFree, exponents ({a},{c}), b = {b}"),
            Verdict::Neither => f.write_str("Neither"),
            Verdict::Inapplicable { reason } => write!(f, "Inapplicable ({reason})"),
        }
    }
}

/// Numeric verdict from `d`, `r = mdr(f)` and the total Tjurina number.
///
/// - `2r > d`: inapplicable.
/// - `2r <= d-1` and `eta = tau`: free with exponents `(r, d-1-r)`.
/// - `eta = tau + 1`: nearly free with exponents `(r, d-r)` and `b = 2 - r`.
pub fn verdict(d: u32, r: u32, tau: u64) -> Verdict {
    let (d_, r_) = (d as i64, r as i64);
    if 2 * r_ > d_ {
        return Verdict::Inapplicable { reason: format!("criterion inapplicable: r = {r} > d/2 = {d}/2") };
    }
    let e = eta_unchecked(d_, r_);
    let tau = tau as i64;
    if 2 * r_ < d_ && e == tau {
        Verdict::Free { exponents: (r, d - 1 - r) }
    } else if e == tau + 1 {
        let d2 = d - r;
        Verdict::NearlyFree { exponents: (r, d2), b: d2 as i64 - d_ + 2 }
    } else {
        Verdict::Neither
    }
}

/// Report notes attached to a verdict.
pub fn verdict_notes(d: u32, r: u32, v: &Verdict) -> Vec<String> {
    let mut notes = Vec::new();
    if v.is_free() {
        notes.push("free by numeric criterion: eta = tau with 2r <= d-1".to_string());
    }
    if 2 * r == d {
        notes.push("boundary case 2r = d: only the nearly free branch can apply".to_string());
    }
    if let Verdict::Inapplicable { reason } = v {
        notes.push(reason.clone());
    }
    notes
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveAnalysis {
    pub d: u32,
    pub mdr: MdrResult,
    pub eta: u64,
    pub tau: u64,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

pub fn analyze_curve(f: &HomogeneousPolynomial, tau: u64) -> Result<CurveAnalysis> {
    analyze_curve_with(f, tau, MdrOptions::default())
}

pub fn analyze_curve_with(f: &HomogeneousPolynomial, tau: u64, options: MdrOptions) -> Result<CurveAnalysis> {
    let d = f.degree();
    let m = mdr_with(f, options)?;
    let eta = eta(d, m.r)?;
    let verdict = verdict(d, m.r, tau);
    let notes = verdict_notes(d, m.r, &verdict);
    Ok(CurveAnalysis { d, eta, tau, verdict, notes, mdr: m })
}
