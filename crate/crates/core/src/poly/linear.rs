use std::fmt;

use serde::{Serialize, Serializer};

use super::{parse_poly, HomogeneousPolynomial, Monomial, Var};
use crate::error::{Error, Result};
use crate::field::{FieldTag, Scalar};

/// Scales a nonzero triple so its first nonzero entry is 1.
pub(crate) fn normalize_triple(v: [Scalar; 3]) -> Option<[Scalar; 3]> {
    let lead = v.iter().find(|c| !c.is_zero())?.inverse().ok()?;
    Some(v.map(|c| &c * &lead))
}

pub(crate) fn cross(u: &[Scalar; 3], v: &[Scalar; 3]) -> [Scalar; 3] {
    [&(&u[1] * &v[2]) - &(&u[2] * &v[1]), &(&u[2] * &v[0]) - &(&u[0] * &v[2]), &(&u[0] * &v[1]) - &(&u[1] * &v[0])]
}

pub(crate) fn dot(u: &[Scalar; 3], v: &[Scalar; 3]) -> Scalar {
    let mut acc = &u[0] * &v[0];
    acc += &(&u[1] * &v[1]);
    acc += &(&u[2] * &v[2]);
    acc
}

/// A line `a x + b y + c z = 0`, normalized so the first nonzero
/// coefficient is 1. Two forms are equal exactly when they cut out the same
/// projective line.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: [Scalar; 3],
}

impl LinearForm {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<Self> {
        Self::from_coeffs([a, b, c])
    }

    pub fn from_coeffs(coeffs: [Scalar; 3]) -> Result<Self> {
        normalize_triple(coeffs)
            .map(|coeffs| LinearForm { coeffs })
            .ok_or_else(|| Error::InvalidInput("linear form with all coefficients zero".into()))
    }

    pub fn var(v: Var) -> Self {
        let mut coeffs = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
        coeffs[v.index()] = Scalar::one();
        LinearForm { coeffs }
    }

    /// Reads a nonzero degree-one polynomial.
    pub fn from_poly(p: &HomogeneousPolynomial) -> Result<Self> {
        if p.degree() != 1 {
            return Err(Error::DegreeMismatch { left: 1, right: p.degree() });
        }
        Self::from_coeffs(Var::ALL.map(|v| p.coeff(&Monomial::var(v))))
    }

    /// Parses a linear form written as a polynomial expression, e.g. `x - 1/2*y`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_poly(&parse_poly(text, FieldTag::QW)?)
    }

    pub fn coeffs(&self) -> &[Scalar; 3] {
        &self.coeffs
    }

    pub fn field(&self) -> FieldTag {
        self.coeffs.iter().map(Scalar::field).max().expect("three coefficients")
    }

    pub fn eval(&self, point: &[Scalar; 3]) -> Scalar {
        dot(&self.coeffs, point)
    }

    pub fn vanishes_at(&self, point: &[Scalar; 3]) -> bool {
        self.eval(point).is_zero()
    }

    /// `self + eps * other`, renormalized.
    pub fn add_scaled(&self, other: &LinearForm, eps: &Scalar) -> Result<Self> {
        Self::from_coeffs([0, 1, 2].map(|i| &self.coeffs[i] + &(eps * &other.coeffs[i])))
    }

    /// The line `v -> self(T v)` for a 3x3 matrix `T` (row-major).
    pub fn compose(&self, t: &[[Scalar; 3]; 3]) -> Result<Self> {
        Self::from_coeffs([0, 1, 2].map(|j| {
            let col = [t[0][j].clone(), t[1][j].clone(), t[2][j].clone()];
            dot(&self.coeffs, &col)
        }))
    }

    /// The intersection point of two distinct lines (unnormalized).
    pub fn meet(&self, other: &LinearForm) -> [Scalar; 3] {
        cross(&self.coeffs, &other.coeffs)
    }

    pub fn to_poly(&self, field: FieldTag) -> HomogeneousPolynomial {
        let terms = Var::ALL
            .iter()
            .filter(|v| !self.coeffs[v.index()].is_zero())
            .map(|v| (Monomial::var(*v), self.coeffs[v.index()].clone()))
            .collect();
        HomogeneousPolynomial::from_map_unchecked(1, terms, field.join(self.field()))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly(self.field()))
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearForm({self})")
    }
}

impl Serialize for LinearForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Expands a product of linear forms over `field`.
pub fn product_of_forms(forms: &[LinearForm], field: FieldTag) -> Result<HomogeneousPolynomial> {
    if forms.is_empty() {
        return Err(Error::InvalidInput("empty product of linear forms".into()));
    }
    let mut acc = HomogeneousPolynomial::constant(Scalar::one(), field)?;
    for form in forms {
        field.check_contains(form.field())?;
        acc = acc.mul_unchecked(&form.to_poly(field));
    }
    Ok(acc)
}
