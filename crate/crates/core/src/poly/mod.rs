//! Homogeneous polynomials in `K[x, y, z]` with exact coefficients.

pub(crate) mod linear;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

pub use linear::{product_of_forms, LinearForm};
pub use parse::parse_poly;

use crate::error::{Error, Result};
use crate::field::{FieldTag, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }
}

/// `x^a y^b z^c`, stored as `[a, b, c]`.
///
/// Ordered graded-lexicographically with `x > y > z`, so the greatest
/// monomial of a degree is `x^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Monomial([a, b, c])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> [u32; 3] {
        self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }

    /// Position inside [`graded_basis`] of this monomial's degree.
    pub fn graded_index(&self) -> usize {
        let d = self.degree() as usize;
        let k = d - self.0[0] as usize;
        k * (k + 1) / 2 + self.0[2] as usize
    }

    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.0[v.index()];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}", v.name())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}

/// Monomials of degree `r`, leading (graded-lex greatest) first.
pub fn graded_basis(r: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(basis_len(r));
    for a in (0..=r).rev() {
        for b in (0..=r - a).rev() {
            out.push(Monomial([a, b, r - a - b]));
        }
    }
    out
}

/// `dim S_r = (r+1)(r+2)/2`.
pub fn basis_len(r: u32) -> usize {
    let r = r as usize;
    (r + 1) * (r + 2) / 2
}

/// A homogeneous polynomial of fixed degree over a tagged field.
///
/// Only nonzero coefficients are stored; the zero polynomial keeps its degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousPolynomial {
    degree: u32,
    terms: BTreeMap<Monomial, Scalar>,
    field: FieldTag,
}

impl HomogeneousPolynomial {
    pub fn zero(degree: u32, field: FieldTag) -> Self {
        HomogeneousPolynomial { degree, terms: BTreeMap::new(), field }
    }

    pub fn constant(c: Scalar, field: FieldTag) -> Result<Self> {
        Self::from_terms(0, [(Monomial::ONE, c)], field)
    }

    pub fn var(v: Var, field: FieldTag) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), Scalar::one());
        HomogeneousPolynomial { degree: 1, terms, field }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
        field: FieldTag,
    ) -> Result<Self> {
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: m.degree() });
            }
            field.check_contains(c.field())?;
            accumulate(&mut map, m, &c);
        }
        Ok(HomogeneousPolynomial { degree, terms: map, field })
    }

    pub(crate) fn from_map_unchecked(degree: u32, terms: BTreeMap<Monomial, Scalar>, field: FieldTag) -> Self {
        debug_assert!(terms.iter().all(|(m, c)| m.degree() == degree && !c.is_zero()));
        HomogeneousPolynomial { degree, terms, field }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    /// Smallest field containing every coefficient.
    pub fn coefficient_field(&self) -> FieldTag {
        self.terms.values().map(Scalar::field).max().unwrap_or(FieldTag::Q)
    }

    /// Same polynomial, re-tagged. Fails if a coefficient does not fit.
    pub fn with_field(&self, field: FieldTag) -> Result<Self> {
        field.check_contains(self.coefficient_field())?;
        Ok(HomogeneousPolynomial { field, ..self.clone() })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms, leading monomial first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        self.field.check(other.field)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: other.degree });
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, *m, c);
        }
        Ok(Self::from_map_unchecked(self.degree, terms, self.field))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        Self::from_map_unchecked(self.degree, terms, self.field)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        self.field.check_contains(c.field())?;
        if c.is_zero() {
            return Ok(Self::zero(self.degree, self.field));
        }
        let terms = self.terms.iter().map(|(m, v)| (*m, v * c)).collect();
        Ok(Self::from_map_unchecked(self.degree, terms, self.field))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                accumulate(&mut terms, m1.mul(m2), &(c1 * c2));
            }
        }
        Self::from_map_unchecked(self.degree + other.degree, terms, self.field)
    }

    /// `c * m * self` for a monomial `m`.
    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree + m.degree(), self.field);
        }
        let terms = self.terms.iter().map(|(t, v)| (t.mul(m), v * c)).collect();
        Self::from_map_unchecked(self.degree + m.degree(), terms, self.field)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Scalar::one(), self.field).expect("one fits every field");
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    pub fn partial(&self, v: Var) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::ZeroDerivativeDomain);
        }
        let i = v.index();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[i] -= 1;
            terms.insert(dm, c * &Scalar::from_int(e as i64));
        }
        Ok(Self::from_map_unchecked(self.degree - 1, terms, self.field))
    }

    /// `[f_x, f_y, f_z]`.
    pub fn gradient(&self) -> Result<[Self; 3]> {
        Ok([self.partial(Var::X)?, self.partial(Var::Y)?, self.partial(Var::Z)?])
    }

    /// Exact quotient by a linear form. Fails with `NotDivisible` if the
    /// remainder is nonzero.
    pub fn divide_exact(&self, form: &LinearForm) -> Result<Self> {
        self.field.check_contains(form.field())?;
        let not_divisible = || Error::NotDivisible { divisor: form.to_string() };
        if self.degree == 0 {
            return if self.is_zero() {
                Err(Error::OutOfRange("cannot divide a degree-0 polynomial".into()))
            } else {
                Err(not_divisible())
            };
        }
        let divisor = form.to_poly(self.field);
        let (lead_mono, lead_coeff) = divisor.leading_term().expect("linear form is nonzero");
        let (lead_mono, lead_inv) = (*lead_mono, lead_coeff.inverse()?);
        let mut rem = self.terms.clone();
        let mut quotient = BTreeMap::new();
        // Each reduction step only touches monomials below the current leading
        // one, so a leading term not divisible by the divisor's can never cancel.
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if !lead_mono.divides(&m) {
                return Err(not_divisible());
            }
            let mut qm = m;
            for i in 0..3 {
                qm.0[i] -= lead_mono.0[i];
            }
            let qc = &c * &lead_inv;
            for (dm, dc) in &divisor.terms {
                accumulate(&mut rem, qm.mul(dm), &-(&qc * dc));
            }
            debug_assert!(!rem.contains_key(&m));
            quotient.insert(qm, qc);
        }
        Ok(Self::from_map_unchecked(self.degree - 1, quotient, self.field))
    }

    pub fn evaluate(&self, point: &[Scalar; 3]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (&e, p) in m.0.iter().zip(point) {
                if e > 0 {
                    t = &t * &p.pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// `f(T v)` for the linear substitution sending `x, y, z` to the given
    /// degree-one polynomials.
    pub fn substitute(&self, images: &[HomogeneousPolynomial; 3]) -> Result<Self> {
        for img in images {
            self.field.check(img.field)?;
            if img.degree != 1 {
                return Err(Error::DegreeMismatch { left: 1, right: img.degree });
            }
        }
        let mut powers: [Vec<HomogeneousPolynomial>; 3] = Default::default();
        for (i, img) in images.iter().enumerate() {
            let mut p = vec![Self::constant(Scalar::one(), self.field)?];
            for _ in 0..self.degree {
                let next = p.last().expect("nonempty").mul_unchecked(img);
                p.push(next);
            }
            powers[i] = p;
        }
        let mut acc = BTreeMap::new();
        for (m, c) in &self.terms {
            let [a, b, e] = m.0;
            let t = powers[0][a as usize].mul_unchecked(&powers[1][b as usize]).mul_unchecked(&powers[2][e as usize]);
            for (tm, tc) in &t.terms {
                accumulate(&mut acc, *tm, &(tc * c));
            }
        }
        Ok(Self::from_map_unchecked(self.degree, acc, self.field))
    }
}

pub(crate) fn accumulate(map: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Canonical text: terms in graded-lex order with explicit `*` and `^`.
/// Mixed Eisenstein coefficients are parenthesised.
impl fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let (negative, magnitude) = if c.is_compound() {
                (false, c.clone())
            } else if c.is_negative_simple() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            match (i == 0, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let coeff_text = if magnitude.is_compound() { format!("({magnitude})") } else { magnitude.to_string() };
            if *m == Monomial::ONE {
                f.write_str(&coeff_text)?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{coeff_text}*")?;
                }
                m.write(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomogeneousPolynomial[{}; deg {}]({self})", self.field, self.degree)
    }
}

impl Serialize for HomogeneousPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
