//! Dense exact matrices: rank and right-kernel bases by elimination.
//!
//! Two elimination strategies sit behind the same contract. [`Elimination::Gauss`]
//! is plain Gauss-Jordan over the field. [`Elimination::FractionFree`] clears
//! denominators row by row and runs Bareiss elimination over `Z[w]`, then
//! back-substitutes. The reduced row echelon form is unique, so both give
//! identical kernel bases.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{FieldTag, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Elimination {
    #[default]
    Gauss,
    FractionFree,
}

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
    field: FieldTag,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>, field: FieldTag) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        for e in &entries {
            field.check_contains(e.field())?;
        }
        Ok(ExactMatrix { rows, cols, entries, field })
    }

    pub fn zeros(rows: usize, cols: usize, field: FieldTag) -> Self {
        ExactMatrix { rows, cols, entries: vec![Scalar::zero(); rows * cols], field }
    }

    pub fn identity(n: usize, field: FieldTag) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, field: FieldTag) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged rows".into()));
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect(), field)
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect();
        Self::from_rows(rows, FieldTag::Q).expect("rectangular integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) -> Result<()> {
        self.field.check_contains(value.field())?;
        self.entries[r * self.cols + c] = value;
        Ok(())
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::InvalidInput(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        self.rank_with(Elimination::default())
    }

    pub fn rank_with(&self, strategy: Elimination) -> usize {
        self.echelon(strategy).pivots.len()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.kernel_basis_with(Elimination::default())
    }

    /// Basis of `{v : M v = 0}`, one vector per free column in increasing
    /// order, each scaled so its first nonzero entry is 1.
    pub fn kernel_basis_with(&self, strategy: Elimination) -> Vec<Vec<Scalar>> {
        let ech = self.echelon(strategy).into_reduced();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                v[p] = -&row[free];
            }
            let lead = v.iter().find(|c| !c.is_zero()).expect("free column entry is 1").inverse().expect("nonzero");
            if !lead.is_one() {
                for c in v.iter_mut() {
                    *c = &*c * &lead;
                }
            }
            basis.push(v);
        }
        basis
    }

    fn echelon(&self, strategy: Elimination) -> Echelon {
        let rows: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        match strategy {
            Elimination::Gauss => gauss_jordan(rows, self.cols),
            Elimination::FractionFree => bareiss(rows, self.cols),
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Row echelon form: `rows[i]` has its pivot in column `pivots[i]`.
struct Echelon {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    reduced: bool,
}

impl Echelon {
    /// Scales pivots to 1 and clears entries above them.
    fn into_reduced(mut self) -> Echelon {
        if self.reduced {
            return self;
        }
        for i in (0..self.pivots.len()).rev() {
            let p = self.pivots[i];
            let inv = self.rows[i][p].inverse().expect("pivot is nonzero");
            for c in self.rows[i].iter_mut().skip(p) {
                if !c.is_zero() {
                    *c = &*c * &inv;
                }
            }
            for k in 0..i {
                eliminate(&mut self.rows, k, i, p);
            }
        }
        self.reduced = true;
        self
    }
}

/// `rows[target] -= rows[target][col] * rows[source]`, with `rows[source][col] = 1`.
fn eliminate(rows: &mut [Vec<Scalar>], target: usize, source: usize, col: usize) {
    let factor = rows[target][col].clone();
    if factor.is_zero() {
        return;
    }
    let (src, dst) = if source < target {
        let (a, b) = rows.split_at_mut(target);
        (&a[source], &mut b[0])
    } else {
        let (a, b) = rows.split_at_mut(source);
        (&b[0], &mut a[target])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()).skip(col) {
        if !s.is_zero() {
            *d -= &(&factor * s);
        }
    }
}

/// Among rows `from..` with a nonzero in `col`, the sparsest one.
fn choose_pivot(rows: &[Vec<Scalar>], from: usize, col: usize) -> Option<usize> {
    (from..rows.len())
        .filter(|&r| !rows[r][col].is_zero())
        .min_by_key(|&r| rows[r][col..].iter().filter(|c| !c.is_zero()).count())
}

fn gauss_jordan(mut rows: Vec<Vec<Scalar>>, cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    for col in 0..cols {
        let next = pivots.len();
        let Some(p) = choose_pivot(&rows, next, col) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][col].inverse().expect("pivot is nonzero");
        for c in rows[next].iter_mut().skip(col) {
            if !c.is_zero() {
                *c = &*c * &inv;
            }
        }
        for r in 0..rows.len() {
            if r != next {
                eliminate(&mut rows, r, next, col);
            }
        }
        pivots.push(col);
    }
    rows.truncate(pivots.len());
    Echelon { rows, pivots, reduced: true }
}

fn bareiss(mut rows: Vec<Vec<Scalar>>, cols: usize) -> Echelon {
    for row in rows.iter_mut() {
        let lcm =
            row.iter().map(Scalar::denominator_lcm).fold(BigInt::from(1), |acc, d| num_integer::Integer::lcm(&acc, &d));
        let k = BigRational::from_integer(lcm);
        for c in row.iter_mut() {
            *c = c.scale_rational(&k);
        }
    }
    let mut pivots = Vec::new();
    let mut prev = Scalar::one();
    for col in 0..cols {
        let next = pivots.len();
        let Some(p) = choose_pivot(&rows, next, col) else {
            continue;
        };
        rows.swap(next, p);
        let prev_inv = prev.inverse().expect("previous pivot is nonzero");
        let pivot = rows[next][col].clone();
        let (head, tail) = rows.split_at_mut(next + 1);
        let src = &head[next];
        for row in tail.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..cols {
                // Sylvester's identity makes this division exact in Z[w].
                let v = &(&pivot * &row[j]) - &(&lead * &src[j]);
                row[j] = if prev_inv.is_one() { v } else { &v * &prev_inv };
            }
            row[col] = Scalar::zero();
        }
        prev = pivot;
        pivots.push(col);
    }
    rows.truncate(pivots.len());
    Echelon { rows, pivots, reduced: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const STRATEGIES: [Elimination; 2] = [Elimination::Gauss, Elimination::FractionFree];

    #[test]
    fn ranks() {
        for s in STRATEGIES {
            assert_eq!(ExactMatrix::identity(3, FieldTag::Q).rank_with(s), 3);
            assert_eq!(ExactMatrix::from_int_rows(&[&[1, 2], &[2, 4]]).rank_with(s), 1);
            assert_eq!(ExactMatrix::zeros(0, 4, FieldTag::Q).rank_with(s), 0);
        }
    }

    #[test]
    fn kernels() {
        for s in STRATEGIES {
            assert!(ExactMatrix::identity(2, FieldTag::Q).kernel_basis_with(s).is_empty());
            let k = ExactMatrix::zeros(1, 3, FieldTag::Q).kernel_basis_with(s);
            assert_eq!(k.len(), 3);
            let m = ExactMatrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6]]);
            let k = m.kernel_basis_with(s);
            assert_eq!(k.len(), 2);
            assert_eq!(k[0], vec![Scalar::one(), Scalar::from_ratio(-1, 2).unwrap(), Scalar::zero()]);
            for v in &k {
                assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
            }
        }
    }

    #[test]
    fn kernel_normalized_when_pivot_precedes_free_column() {
        // Kernel spanned by (-2, 1); normalized to (1, -1/2).
        let m = ExactMatrix::from_int_rows(&[&[1, 2]]);
        assert_eq!(m.kernel_basis(), vec![vec![Scalar::one(), Scalar::from_ratio(-1, 2).unwrap()]]);
    }

    #[test]
    fn eisenstein_entries() {
        let w = Scalar::omega();
        let m = ExactMatrix::from_rows(vec![vec![Scalar::one(), w.clone()], vec![w.clone(), w.pow(2)]], FieldTag::QW)
            .unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.rank_with(Elimination::FractionFree), 1);
        assert!(ExactMatrix::from_rows(vec![vec![w]], FieldTag::Q).is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = ExactMatrix> {
        (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
            // Low-rank-biased: many zeros and duplicated structure.
            proptest::collection::vec((-3i64..4, -1i64..2, 1i64..3), r * c).prop_map(move |es| {
                let entries = es
                    .into_iter()
                    .map(|(a, b, d)| Scalar::eisenstein(a.max(0) * (a % 2), b).div(&Scalar::from_int(d)).unwrap())
                    .collect();
                ExactMatrix::new(r, c, entries, FieldTag::QW).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_kernel_validity(m in arb_matrix()) {
            for s in STRATEGIES {
                let k = m.kernel_basis_with(s);
                prop_assert_eq!(m.rank_with(s) + k.len(), m.cols());
                for v in &k {
                    prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
                    prop_assert!(v.iter().find(|c| !c.is_zero()).unwrap().is_one());
                }
                if !k.is_empty() {
                    let stacked = ExactMatrix::from_rows(k.clone(), FieldTag::QW).unwrap();
                    prop_assert_eq!(stacked.rank(), k.len());
                }
            }
            prop_assert_eq!(m.kernel_basis_with(Elimination::Gauss), m.kernel_basis_with(Elimination::FractionFree));
        }

        #[test]
        fn rank_invariant_under_row_operations(m in arb_matrix(), seed in 0u64..1000) {
            let n = m.rows();
            let mut rows: Vec<Vec<Scalar>> = (0..n).map(|r| m.row(r).to_vec()).collect();
            rows.rotate_left((seed as usize) % n);
            for (i, row) in rows.iter_mut().enumerate() {
                let k = Scalar::eisenstein(1 + (seed as i64 + i as i64) % 3, (i % 2) as i64);
                for c in row.iter_mut() {
                    *c = &*c * &k;
                }
            }
            let permuted = ExactMatrix::from_rows(rows, FieldTag::QW).unwrap();
            prop_assert_eq!(permuted.rank(), m.rank());
        }
    }
}
