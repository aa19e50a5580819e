//! Splitting a triple point into three nodes by moving one line.

use serde::Serialize;

use super::{LineArrangement, ProjectivePoint};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::linear::cross;
use crate::poly::LinearForm;

impl LineArrangement {
    /// Replaces line `line_index` (through the triple point `point`) by
    /// `line + eps * direction`.
    ///
    /// The result must have exactly one triple point fewer, three nodes more
    /// and the same number of points of every higher multiplicity; otherwise
    /// the parameter was not generic and `NonGenericDeformation` is returned.
    pub fn deform_triple_point(
        &self,
        point: &ProjectivePoint,
        line_index: usize,
        direction: &LinearForm,
        eps: &Scalar,
    ) -> Result<LineArrangement> {
        if eps.is_zero() {
            return Err(Error::ZeroEpsilon);
        }
        if line_index >= self.len() {
            return Err(Error::IndexOutOfRange { index: line_index, len: self.len() });
        }
        self.field.check_contains(point.field())?;
        self.field.check_contains(direction.field())?;
        self.field.check_contains(eps.field())?;
        if self.lines_through(point).len() != 3 {
            return Err(Error::NotATriplePoint(point.to_string()));
        }
        let line = &self.lines[line_index];
        if !line.vanishes_at(point.coords()) {
            return Err(Error::LineNotIncident { index: line_index, point: point.to_string() });
        }
        if direction.vanishes_at(point.coords()) {
            return Err(Error::DirectionThroughPoint(direction.to_string()));
        }
        let moved = line.add_scaled(direction, eps)?;
        if let Some(k) = self.lines.iter().position(|l| *l == moved) {
            return Err(Error::NonGenericDeformation(format!("moved line {moved} coincides with line {k}")));
        }
        let result = self.replace_line(line_index, moved)?;

        let before = self.weak_combinatorics();
        let after = result.weak_combinatorics();
        let ok = after.t3() + 1 == before.t3() && after.t2() == before.t2() + 3 && after.higher() == before.higher();
        if !ok {
            return Err(Error::NonGenericDeformation(format!("combinatorics went from {before} to {after}")));
        }
        Ok(result)
    }
}

/// `true` iff the total Tjurina number dropped by exactly one.
pub fn tjurina_drop_check(original: &LineArrangement, deformed: &LineArrangement) -> bool {
    original.milnor_number() == deformed.milnor_number() + 1
}

#[derive(Debug, Clone, Serialize)]
pub struct Deformation {
    pub direction: LinearForm,
    pub eps: Scalar,
    #[serde(skip)]
    pub result: LineArrangement,
}

const EPS_CANDIDATES: [(i64, i64); 14] = [
    (1, 1),
    (-1, 1),
    (2, 1),
    (-2, 1),
    (1, 2),
    (-1, 2),
    (3, 1),
    (-3, 1),
    (1, 3),
    (-1, 3),
    (5, 1),
    (2, 3),
    (-5, 2),
    (7, 3),
];

/// Looks for a direction and parameter that split `point` along line
/// `line_index` generically.
///
/// Any other point of multiplicity at least 3 on the moving line must
/// survive, so the line is rotated about it; with two or more such points no
/// single motion works and the search fails immediately.
pub fn search_deformation(
    arrangement: &LineArrangement,
    point: &ProjectivePoint,
    line_index: usize,
) -> Result<Deformation> {
    let line = arrangement
        .lines()
        .get(line_index)
        .ok_or(Error::IndexOutOfRange { index: line_index, len: arrangement.len() })?;
    let pivots: Vec<ProjectivePoint> = arrangement
        .singular_points()
        .into_iter()
        .filter(|p| p.multiplicity >= 3 && p.point != *point && line.vanishes_at(p.point.coords()))
        .map(|p| p.point)
        .collect();

    let unit = |i: usize| {
        let mut e = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
        e[i] = Scalar::one();
        e
    };
    let mut candidates: Vec<[Scalar; 3]> = match pivots.as_slice() {
        [] => vec![unit(0), unit(1), unit(2), [1.into(), 1.into(), 1.into()], [1.into(), 2.into(), 3.into()]],
        [q] => {
            // Forms through q: q x e_i and a couple of combinations.
            let basis: Vec<[Scalar; 3]> = (0..3).map(|i| cross(q.coords(), &unit(i))).collect();
            let mut c = basis.clone();
            c.push([0, 1, 2].map(|k| &basis[0][k] + &basis[1][k]));
            c.push([0, 1, 2].map(|k| &basis[1][k] + &basis[2][k]));
            c
        }
        _ => {
            return Err(Error::NonGenericDeformation(format!(
                "line {line_index} carries {} other points of multiplicity >= 3",
                pivots.len()
            )))
        }
    };
    candidates.retain(|c| c.iter().any(|s| !s.is_zero()));

    let mut last_err = Error::NonGenericDeformation("no candidate direction".into());
    for coeffs in candidates {
        let direction = LinearForm::from_coeffs(coeffs)?;
        if direction.vanishes_at(point.coords()) {
            continue;
        }
        for (n, d) in EPS_CANDIDATES {
            let eps = Scalar::from_ratio(n, d)?;
            match arrangement.deform_triple_point(point, line_index, &direction, &eps) {
                Ok(result) => return Ok(Deformation { direction, eps, result }),
                Err(e @ Error::NonGenericDeformation(_)) => last_err = e,
                Err(e) => return Err(e),
            }
        }
    }
    Err(last_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::WeakCombinatorics;

    fn braid() -> LineArrangement {
        LineArrangement::parse_forms(&["x", "y", "z", "x-y", "y-z", "x-z"]).unwrap()
    }

    #[test]
    fn braid_deformation_matches_moved_line() {
        let a = braid();
        let p = ProjectivePoint::from_ints(1, 1, 1).unwrap();
        let dir = LinearForm::parse("y").unwrap();
        let eps = Scalar::from_ratio(1, 2).unwrap();
        let b = a.deform_triple_point(&p, 3, &dir, &eps).unwrap();
        assert_eq!(b, LineArrangement::parse_forms(&["x", "y", "z", "x-1/2*y", "y-z", "x-z"]).unwrap());
        assert_eq!(b.weak_combinatorics(), WeakCombinatorics::nodes_and_triples(6, 6, 3));
        assert!(tjurina_drop_check(&a, &b));
        assert!(!tjurina_drop_check(&a, &a));
    }

    #[test]
    fn precondition_errors() {
        let a = braid();
        let p = ProjectivePoint::from_ints(1, 1, 1).unwrap();
        let y = LinearForm::parse("y").unwrap();
        let half = Scalar::from_ratio(1, 2).unwrap();
        assert_eq!(a.deform_triple_point(&p, 3, &y, &Scalar::zero()), Err(Error::ZeroEpsilon));
        let node = ProjectivePoint::from_ints(0, 1, 1).unwrap();
        assert!(matches!(a.deform_triple_point(&node, 0, &y, &half), Err(Error::NotATriplePoint(_))));
        assert!(matches!(a.deform_triple_point(&p, 0, &y, &half), Err(Error::LineNotIncident { .. })));
        let through = LinearForm::parse("x-y").unwrap();
        assert!(matches!(a.deform_triple_point(&p, 3, &through, &half), Err(Error::DirectionThroughPoint(_))));
        assert!(matches!(a.deform_triple_point(&p, 9, &y, &half), Err(Error::IndexOutOfRange { .. })));
        // eps = 1 moves x - y onto x.
        assert!(matches!(a.deform_triple_point(&p, 3, &y, &Scalar::one()), Err(Error::NonGenericDeformation(_))));
    }

    #[test]
    fn search_finds_generic_parameters() {
        let a = braid();
        for sp in a.singular_points().into_iter().filter(|p| p.multiplicity == 3) {
            for &i in &sp.incident_lines {
                let d = search_deformation(&a, &sp.point, i).unwrap();
                assert_eq!(d.result.weak_combinatorics(), WeakCombinatorics::nodes_and_triples(6, 6, 3));
            }
        }
    }
}
