//! Named arrangements with known combinatorics.
//!
//! Every entry is checked against its expected `(d; t2, t3)` when loaded.

use super::{LineArrangement, WeakCombinatorics};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::{LinearForm, Var};

pub const CATALOG_NAMES: [&str; 10] = [
    "A4_free",
    "A4_generic",
    "A5_free",
    "A5_nearlyfree",
    "A1_6",
    "A6_deformed",
    "B7_free",
    "B7_deformed",
    "MacLane8",
    "DualHesse9",
];

/// Expected `(d, t2, t3)` for a catalog entry.
pub fn expected_combinatorics(name: &str) -> Option<(usize, u64, u64)> {
    Some(match name {
        "A4_free" => (4, 3, 1),
        "A4_generic" => (4, 6, 0),
        "A5_free" => (5, 4, 2),
        "A5_nearlyfree" => (5, 7, 1),
        "A1_6" => (6, 3, 4),
        "A6_deformed" => (6, 6, 3),
        "B7_free" => (7, 3, 6),
        "B7_deformed" => (7, 6, 5),
        "MacLane8" => (8, 4, 8),
        "DualHesse9" => (9, 0, 12),
        _ => return None,
    })
}

pub fn catalog(name: &str) -> Result<LineArrangement> {
    let arrangement = match name {
        "A4_free" => rational(&["x", "y", "x-y", "z"]),
        "A4_generic" => rational(&["x", "y", "z", "x+y+z"]),
        "A5_free" => rational(&["x", "y", "x-y", "z", "x-z"]),
        // A5_free with y moved to y + z, splitting the triple point (0:0:1).
        "A5_nearlyfree" => rational(&["x", "y+z", "x-y", "z", "x-z"]),
        "A1_6" => rational(&["x", "y", "z", "x-y", "y-z", "x-z"]),
        "A6_deformed" => rational(&["x", "y", "z", "x-1/2*y", "y-z", "x-z"]),
        "B7_free" => rational(&["z", "x-z", "x+z", "y-z", "y+z", "y-x", "y+x"]),
        // B7_free with y - x rotated about (1:1:1), splitting (-1:-1:1).
        "B7_deformed" => rational(&["z", "x-z", "x+z", "y-z", "y+z", "2*y-x-z", "y+x"]),
        "MacLane8" => dual_hesse()?.delete_line(0),
        "DualHesse9" => dual_hesse(),
        _ => return Err(Error::UnknownName(name.to_string())),
    }?;
    let (d, t2, t3) = expected_combinatorics(name).expect("known name");
    let wc = arrangement.weak_combinatorics();
    if wc != WeakCombinatorics::nodes_and_triples(d, t2, t3) {
        return Err(Error::InvalidInput(format!(
            "catalog entry {name} has combinatorics {wc}, expected ({d}; {t2}, {t3})"
        )));
    }
    Ok(arrangement)
}

fn rational(forms: &[&str]) -> Result<LineArrangement> {
    LineArrangement::parse_forms(forms)
}

/// `u - w^k v` for `(u, v)` in `(x, y), (y, z), (z, x)` and `k = 0, 1, 2`.
fn dual_hesse() -> Result<LineArrangement> {
    let w = Scalar::omega();
    let mut lines = Vec::with_capacity(9);
    for (u, v) in [(Var::X, Var::Y), (Var::Y, Var::Z), (Var::Z, Var::X)] {
        for k in 0..3 {
            let mut c = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
            c[u.index()] = Scalar::one();
            c[v.index()] = -w.pow(k);
            lines.push(LinearForm::from_coeffs(c)?);
        }
    }
    LineArrangement::from_forms(lines)
}
