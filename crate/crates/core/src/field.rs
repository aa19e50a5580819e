//! Exact scalars in the rationals and in the Eisenstein field `Q(w)`,
//! where `w` is a fixed abstract root of `t^2 + t + 1`.
//!
//! Every value is stored as a pair `a + b*w` of reduced big rationals, so a
//! rational number is simply the case `b = 0`. The [`FieldTag`] of a value is
//! the smallest of the two fields containing it.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::text::Cursor;

pub type Rational = BigRational;

/// Which coefficient field a polynomial, matrix or arrangement lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    /// The rationals.
    Q,
    /// The Eisenstein field `Q(w)`, `w^2 + w + 1 = 0`.
    QW,
}

impl FieldTag {
    /// Whether `other` embeds into `self`.
    pub fn contains(self, other: FieldTag) -> bool {
        self >= other
    }

    /// Smallest field containing both.
    pub fn join(self, other: FieldTag) -> FieldTag {
        self.max(other)
    }

    pub(crate) fn check(self, found: FieldTag) -> Result<()> {
        if self == found {
            Ok(())
        } else {
            Err(Error::FieldMismatch { expected: self, found })
        }
    }

    /// Rejects values that do not lie in `self`.
    pub(crate) fn check_contains(self, found: FieldTag) -> Result<()> {
        if self.contains(found) {
            Ok(())
        } else {
            Err(Error::FieldMismatch { expected: self, found })
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Q => f.write_str("Q"),
            FieldTag::QW => f.write_str("Qw"),
        }
    }
}

impl FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" | "q" => Ok(FieldTag::Q),
            "Qw" | "QW" | "qw" | "Q(w)" => Ok(FieldTag::QW),
            other => Err(Error::InvalidInput(format!("unknown field `{other}`"))),
        }
    }
}

impl Serialize for FieldTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An element `a + b*w` of `Q(w)`.
///
/// The derived ordering compares `a` first, then `b`. It has no algebraic
/// meaning and only serves deterministic sorting.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar {
    a: Rational,
    b: Rational,
}

impl Scalar {
    pub fn new(a: Rational, b: Rational) -> Self {
        Scalar { a, b }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    /// The primitive cube root of unity `w`.
    pub fn omega() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    pub fn from_rational(a: Rational) -> Self {
        Scalar { a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::from_rational(Rational::new(num.into(), den.into())))
    }

    /// `a + b*w` from integers.
    pub fn eisenstein(a: i64, b: i64) -> Self {
        Scalar::new(Rational::from_integer(a.into()), Rational::from_integer(b.into()))
    }

    /// Rational part.
    pub fn re(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `w`.
    pub fn omega_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn field(&self) -> FieldTag {
        if self.b.is_zero() {
            FieldTag::Q
        } else {
            FieldTag::QW
        }
    }

    /// The field norm `a^2 - ab + b^2`, which vanishes only at zero.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Image under `w -> w^2 = -1 - w`.
    pub fn conjugate(&self) -> Self {
        Scalar::new(&self.a - &self.b, -&self.b)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(Scalar::new(c.a / &n, c.b / n))
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn scale_rational(&self, k: &Rational) -> Self {
        Scalar::new(&self.a * k, &self.b * k)
    }

    /// Least common multiple of the denominators of both components.
    pub fn denominator_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Whether `format` needs parentheses when used as a coefficient.
    pub(crate) fn is_compound(&self) -> bool {
        !self.a.is_zero() && !self.b.is_zero()
    }

    /// Sign of a non-compound scalar (the sign of its single nonzero part).
    pub(crate) fn is_negative_simple(&self) -> bool {
        if self.b.is_zero() {
            self.a.is_negative()
        } else if self.a.is_zero() {
            self.b.is_negative()
        } else {
            false
        }
    }
}

fn fmt_omega_coeff(f: &mut fmt::Formatter<'_>, b: &Rational) -> fmt::Result {
    if b.is_one() {
        f.write_str("w")
    } else {
        write!(f, "{b}*w")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            if self.b.is_negative() {
                f.write_str("-")?;
            }
            return fmt_omega_coeff(f, &self.b.abs());
        }
        write!(f, "{}", self.a)?;
        f.write_str(if self.b.is_negative() { "-" } else { "+" })?;
        fmt_omega_coeff(f, &self.b.abs())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // (a + bw)(c + dw) = ac - bd + (ad + bc - bd) w
        if self.b.is_zero() && rhs.b.is_zero() {
            return Scalar::from_rational(&self.a * &rhs.a);
        }
        let bd = &self.b * &rhs.b;
        Scalar::new(&self.a * &rhs.a - &bd, &self.a * &rhs.b + &self.b * &rhs.a - bd)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.a, -self.b)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.a, -&self.b)
    }
}

/// Parses a scalar literal.
///
/// Grammar: `scalar := term (('+'|'-') term)*`, `term := rat | rat '*' 'w' | 'w'`,
/// `rat := ['-'] digits ['/' digits]`. A leading `-` is also accepted before `w`.
/// Powers are rejected: write `-1-w` instead of `w^2`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let mut cur = Cursor::new(text);
    let value = scalar_expr(&mut cur)?;
    if !cur.at_end() {
        if cur.peek() == Some('^') {
            return Err(Error::syntax(cur.position(), "powers are not allowed in scalar literals"));
        }
        return Err(cur.unexpected("expected `+`, `-` or end of scalar"));
    }
    Ok(value)
}

pub(crate) fn scalar_expr(cur: &mut Cursor) -> Result<Scalar> {
    let negate = cur.eat('-');
    let mut acc = scalar_term(cur)?;
    if negate {
        acc = -acc;
    }
    loop {
        match cur.peek() {
            Some('+') => {
                cur.bump();
                acc += &scalar_term(cur)?;
            }
            Some('-') => {
                cur.bump();
                acc -= &scalar_term(cur)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn scalar_term(cur: &mut Cursor) -> Result<Scalar> {
    if cur.eat('w') {
        return Ok(Scalar::omega());
    }
    let negate = cur.eat('-');
    let mut r = parse_rational(cur)?;
    if negate {
        r = -r;
    }
    if cur.eat('*') {
        if !cur.eat('w') {
            return Err(cur.unexpected("expected `w` after `*`"));
        }
        return Ok(Scalar::new(Rational::zero(), r));
    }
    Ok(Scalar::from_rational(r))
}

pub(crate) fn parse_rational(cur: &mut Cursor) -> Result<Rational> {
    let num = cur.digits()?;
    if cur.eat('/') {
        let at = cur.position();
        let den = cur.digits()?;
        if den.is_zero() {
            return Err(Error::syntax(at, "zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }
    Ok(Rational::from_integer(num))
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}
