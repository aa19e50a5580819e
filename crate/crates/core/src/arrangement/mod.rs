//! Line arrangements in the projective plane and their intersection data.

mod catalog;
mod deform;
mod io;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

pub use catalog::{catalog, expected_combinatorics, CATALOG_NAMES};
pub use deform::{search_deformation, tjurina_drop_check, Deformation};
pub use io::parse_lines;

use crate::error::{Error, Result};
use crate::field::{parse_scalar, FieldTag, Scalar};
use crate::poly::linear::normalize_triple;
use crate::poly::{product_of_forms, HomogeneousPolynomial, LinearForm};

/// A point of the projective plane, normalized so its first nonzero
/// coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint([Scalar; 3]);

impl ProjectivePoint {
    pub fn new(coords: [Scalar; 3]) -> Result<Self> {
        normalize_triple(coords)
            .map(ProjectivePoint)
            .ok_or_else(|| Error::InvalidInput("(0:0:0) is not a projective point".into()))
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new([a.into(), b.into(), c.into()])
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.0
    }

    pub fn field(&self) -> FieldTag {
        self.0.iter().map(Scalar::field).max().expect("three coordinates")
    }
}

/// Parses `a:b:c` with scalar coordinates.
impl FromStr for ProjectivePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidInput(format!("expected a point `a:b:c`, got `{s}`")));
        }
        let coords = [parse_scalar(parts[0])?, parse_scalar(parts[1])?, parse_scalar(parts[2])?];
        Self::new(coords)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjectivePoint{self}")
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub point: ProjectivePoint,
    pub multiplicity: u32,
    /// Indices of the lines through the point, ascending.
    pub incident_lines: Vec<usize>,
}

/// `(d; t_2, t_3, ...)`: the number of lines and, for each multiplicity
/// `k >= 2`, the number of points where exactly `k` lines meet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeakCombinatorics {
    pub d: usize,
    pub counts: BTreeMap<u32, u64>,
}

impl WeakCombinatorics {
    pub fn new(d: usize, counts: impl IntoIterator<Item = (u32, u64)>) -> Self {
        let counts = counts.into_iter().filter(|&(_, n)| n > 0).collect();
        WeakCombinatorics { d, counts }
    }

    pub fn nodes_and_triples(d: usize, t2: u64, t3: u64) -> Self {
        Self::new(d, [(2, t2), (3, t3)])
    }

    pub fn t(&self, k: u32) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    pub fn t2(&self) -> u64 {
        self.t(2)
    }

    pub fn t3(&self) -> u64 {
        self.t(3)
    }

    /// Counts for multiplicities `k >= 4`.
    pub fn higher(&self) -> BTreeMap<u32, u64> {
        self.counts.range(4..).map(|(k, n)| (*k, *n)).collect()
    }

    pub fn only_nodes_and_triples(&self) -> bool {
        self.counts.keys().all(|&k| k == 2 || k == 3)
    }

    /// `sum_k t_k * binom(k, 2) = binom(d, 2)`.
    pub fn pairs_identity_holds(&self) -> bool {
        let pairs: u64 = self.counts.iter().map(|(&k, &n)| n * (k as u64) * (k as u64 - 1) / 2).sum();
        pairs == (self.d * self.d.saturating_sub(1) / 2) as u64
    }

    /// `sum_k t_k (k-1)^2`.
    pub fn milnor_number(&self) -> u64 {
        self.counts.iter().map(|(&k, &n)| n * (k as u64 - 1) * (k as u64 - 1)).sum()
    }
}

impl fmt::Display for WeakCombinatorics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}, {}", self.d, self.t2(), self.t3())?;
        for (k, n) in self.higher() {
            write!(f, ", t{k}={n}")?;
        }
        f.write_str(")")
    }
}

/// A finite set of distinct lines over a tagged field.
#[derive(Clone, PartialEq, Eq)]
pub struct LineArrangement {
    lines: Vec<LinearForm>,
    field: FieldTag,
}

impl LineArrangement {
    pub fn new(lines: Vec<LinearForm>, field: FieldTag) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::InvalidInput("an arrangement needs at least one line".into()));
        }
        let mut seen = BTreeSet::new();
        for line in &lines {
            field.check_contains(line.field())?;
            if !seen.insert(line.clone()) {
                return Err(Error::DuplicateLine(line.to_string()));
            }
        }
        Ok(LineArrangement { lines, field })
    }

    /// Builds an arrangement over the smallest field containing all lines.
    pub fn from_forms(lines: Vec<LinearForm>) -> Result<Self> {
        let field = lines.iter().map(LinearForm::field).max().unwrap_or(FieldTag::Q);
        Self::new(lines, field)
    }

    /// Parses each form as an expression, e.g. `["x", "y - 1/2*z"]`.
    pub fn parse_forms(forms: &[&str]) -> Result<Self> {
        let lines = forms.iter().map(|s| LinearForm::parse(s)).collect::<Result<Vec<_>>>()?;
        Self::from_forms(lines)
    }

    pub fn lines(&self) -> &[LinearForm] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    /// Smallest field containing every line.
    pub fn coefficient_field(&self) -> FieldTag {
        self.lines.iter().map(LinearForm::field).max().unwrap_or(FieldTag::Q)
    }

    /// All points where at least two lines meet, sorted by coordinates.
    pub fn singular_points(&self) -> Vec<SingularPoint> {
        let mut points: BTreeMap<ProjectivePoint, BTreeSet<usize>> = BTreeMap::new();
        for i in 0..self.lines.len() {
            for j in i + 1..self.lines.len() {
                let p =
                    ProjectivePoint::new(self.lines[i].meet(&self.lines[j])).expect("distinct lines meet in a point");
                let set = points.entry(p).or_default();
                set.insert(i);
                set.insert(j);
            }
        }
        points
            .into_iter()
            .map(|(point, set)| SingularPoint {
                multiplicity: set.len() as u32,
                incident_lines: set.into_iter().collect(),
                point,
            })
            .collect()
    }

    /// Lines through `point`.
    pub fn lines_through(&self, point: &ProjectivePoint) -> Vec<usize> {
        (0..self.lines.len()).filter(|&i| self.lines[i].vanishes_at(point.coords())).collect()
    }

    pub fn weak_combinatorics(&self) -> WeakCombinatorics {
        let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
        for p in self.singular_points() {
            *counts.entry(p.multiplicity).or_default() += 1;
        }
        let wc = WeakCombinatorics { d: self.len(), counts };
        debug_assert!(wc.pairs_identity_holds());
        wc
    }

    /// Total Milnor number; equals the total Tjurina number for line arrangements.
    pub fn milnor_number(&self) -> u64 {
        self.weak_combinatorics().milnor_number()
    }

    pub fn defining_polynomial(&self) -> HomogeneousPolynomial {
        product_of_forms(&self.lines, self.field).expect("lines fit the arrangement field")
    }

    pub fn delete_line(&self, index: usize) -> Result<Self> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange { index, len: self.len() });
        }
        if self.len() < 2 {
            return Err(Error::InvalidInput("cannot delete the only line".into()));
        }
        let mut lines = self.lines.clone();
        lines.remove(index);
        Ok(LineArrangement { lines, field: self.field })
    }

    /// Replaces line `index` by `line`.
    pub fn replace_line(&self, index: usize, line: LinearForm) -> Result<Self> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange { index, len: self.len() });
        }
        let mut lines = self.lines.clone();
        lines[index] = line;
        Self::new(lines, self.field)
    }

    /// Pulls every line back along the linear map `v -> T v`.
    pub fn transform(&self, t: &[[Scalar; 3]; 3]) -> Result<Self> {
        let field = t.iter().flatten().map(Scalar::field).fold(self.field, FieldTag::join);
        let lines = self.lines.iter().map(|l| l.compose(t)).collect::<Result<Vec<_>>>()?;
        Self::new(lines, field)
    }

    /// `.lines` text: field header then one line of coefficients per form.
    pub fn to_lines_text(&self) -> String {
        let mut out = format!("field: {}\n", self.field);
        for l in &self.lines {
            let c = l.coeffs();
            out.push_str(&format!("{} {} {}\n", c[0], c[1], c[2]));
        }
        out
    }
}

impl fmt::Debug for LineArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.lines.iter().map(ToString::to_string).collect();
        write!(f, "LineArrangement[{}]{{{}}}", self.field, lines.join(", "))
    }
}
