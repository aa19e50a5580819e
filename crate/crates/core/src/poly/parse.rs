//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := '(' expr ')' | 'x' | 'y' | 'z' | 'w' | rat
//! ```
//!
//! Intermediate values need not be homogeneous; only the fully expanded
//! result is checked.

use std::collections::BTreeMap;

use super::{accumulate, HomogeneousPolynomial, Monomial, Var};
use crate::error::{Error, Result};
use crate::field::{parse_rational, FieldTag, Scalar};
use crate::text::Cursor;

const MAX_DEGREE: u32 = 256;

type Sparse = BTreeMap<Monomial, Scalar>;

/// Parses and expands `text`, rejecting non-homogeneous results and
/// coefficients outside `field`.
pub fn parse_poly(text: &str, field: FieldTag) -> Result<HomogeneousPolynomial> {
    let mut cur = Cursor::new(text);
    let mut parser = Parser { cur: &mut cur, field };
    let value = parser.expr()?;
    if !parser.cur.at_end() {
        return Err(parser.cur.unexpected("expected an operator or end of input"));
    }
    let mut degrees = value.keys().map(Monomial::degree);
    let degree = match degrees.next() {
        None => 0,
        Some(first) => {
            let (lo, hi) = degrees.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d)));
            if lo != hi {
                return Err(Error::NotHomogeneous { low: lo, high: hi });
            }
            lo
        }
    };
    Ok(HomogeneousPolynomial::from_map_unchecked(degree, value, field))
}

struct Parser<'a> {
    cur: &'a mut Cursor,
    field: FieldTag,
}

impl Parser<'_> {
    fn expr(&mut self) -> Result<Sparse> {
        let negate = self.cur.eat('-');
        let mut acc = self.term()?;
        if negate {
            acc = neg(&acc);
        }
        loop {
            match self.cur.peek() {
                Some('+') => {
                    self.cur.bump();
                    let t = self.term()?;
                    add_into(&mut acc, &t);
                }
                Some('-') => {
                    self.cur.bump();
                    let t = self.term()?;
                    add_into(&mut acc, &neg(&t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.factor()?;
        while self.cur.eat('*') {
            let f = self.factor()?;
            acc = mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Sparse> {
        let base = self.base()?;
        if self.cur.eat('^') {
            let at = self.cur.position();
            let e = self.cur.digits()?;
            let e: u32 = u32::try_from(&e)
                .ok()
                .filter(|&e| e <= MAX_DEGREE)
                .ok_or_else(|| Error::syntax(at, "exponent too large"))?;
            let top = base.keys().map(Monomial::degree).max().unwrap_or(0);
            if top.saturating_mul(e) > MAX_DEGREE {
                return Err(Error::syntax(at, "exponent too large"));
            }
            let mut acc = constant(Scalar::one());
            for _ in 0..e {
                acc = mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Sparse> {
        let at = {
            self.cur.skip_ws();
            self.cur.position()
        };
        match self.cur.peek() {
            Some('(') => {
                self.cur.bump();
                let inner = self.expr()?;
                self.cur.expect(')')?;
                Ok(inner)
            }
            Some(c @ ('x' | 'y' | 'z')) => {
                self.cur.bump();
                let v = match c {
                    'x' => Var::X,
                    'y' => Var::Y,
                    _ => Var::Z,
                };
                let mut m = Sparse::new();
                m.insert(Monomial::var(v), Scalar::one());
                Ok(m)
            }
            Some('w') => {
                self.cur.bump();
                if !self.field.contains(FieldTag::QW) {
                    return Err(Error::FieldMismatch { expected: self.field, found: FieldTag::QW });
                }
                Ok(constant(Scalar::omega()))
            }
            Some(c) if c.is_ascii_digit() => {
                let r = parse_rational(self.cur)?;
                Ok(constant(Scalar::from_rational(r)))
            }
            _ => Err(Error::syntax(
                at,
                match self.cur.peek() {
                    Some(c) => format!("expected a variable, number or `(`, found `{c}`"),
                    None => "expected a variable, number or `(`, found end of input".into(),
                },
            )),
        }
    }
}

fn constant(c: Scalar) -> Sparse {
    let mut m = Sparse::new();
    if !c.is_zero() {
        m.insert(Monomial::ONE, c);
    }
    m
}

fn neg(p: &Sparse) -> Sparse {
    p.iter().map(|(m, c)| (*m, -c)).collect()
}

fn add_into(acc: &mut Sparse, p: &Sparse) {
    for (m, c) in p {
        accumulate(acc, *m, c);
    }
}

fn mul(p: &Sparse, q: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (m1, c1) in p {
        for (m2, c2) in q {
            accumulate(&mut out, m1.mul(m2), &(c1 * c2));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{product_of_forms, LinearForm};
    use proptest::prelude::*;

    #[test]
    fn dual_hesse_expansion_matches_repeated_multiplication() {
        let q = parse_poly("(x^3-y^3)*(y^3-z^3)*(z^3-x^3)", FieldTag::Q).unwrap();
        assert_eq!(q.degree(), 9);
        // The two x^3 y^3 z^3 terms cancel.
        assert_eq!(q.num_terms(), 6);
        // Independent expansion: multiply the three binomials term by term.
        let cube = |a: Var, b: Var| {
            let mut ma = [0; 3];
            ma[a.index()] = 3;
            let mut mb = [0; 3];
            mb[b.index()] = 3;
            HomogeneousPolynomial::from_terms(
                3,
                [(Monomial(ma), Scalar::one()), (Monomial(mb), Scalar::from_int(-1))],
                FieldTag::Q,
            )
            .unwrap()
        };
        let expected = cube(Var::X, Var::Y).mul(&cube(Var::Y, Var::Z)).unwrap().mul(&cube(Var::Z, Var::X)).unwrap();
        assert_eq!(q, expected);
    }

    #[test]
    fn degree_seven_example() {
        let f = parse_poly("z*(x^2-z^2)*(y^2-z^2)*(y^2-x^2)", FieldTag::Q).unwrap();
        assert_eq!(f.degree(), 7);
        let forms: Vec<_> =
            ["z", "x-z", "x+z", "y-z", "y+z", "y-x", "y+x"].iter().map(|s| LinearForm::parse(s).unwrap()).collect();
        let prod = product_of_forms(&forms, FieldTag::Q).unwrap();
        assert!(prod == f || prod == f.neg());
    }

    #[test]
    fn rejects_non_homogeneous() {
        assert_eq!(parse_poly("x+1", FieldTag::Q), Err(Error::NotHomogeneous { low: 0, high: 1 }));
        // Only the final expansion matters.
        assert_eq!(parse_poly("(x+1)*x - x", FieldTag::Q).unwrap(), parse_poly("x^2", FieldTag::Q).unwrap());
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_poly("x*", FieldTag::Q), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse_poly("(x+y", FieldTag::Q), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse_poly("x y", FieldTag::Q), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse_poly("x^999999", FieldTag::Q), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("w*x", FieldTag::Q), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn unicode_minus() {
        assert_eq!(
            parse_poly("y^2*z \u{2212} x^3", FieldTag::Q).unwrap(),
            parse_poly("y^2*z - x^3", FieldTag::Q).unwrap()
        );
    }

    fn arb_poly() -> impl Strategy<Value = HomogeneousPolynomial> {
        (1u32..5).prop_flat_map(|d| {
            let n = crate::poly::basis_len(d);
            proptest::collection::vec((-5i64..5, -3i64..3, 1i64..4), n).prop_map(move |cs| {
                let basis = crate::poly::graded_basis(d);
                let terms = basis.into_iter().zip(cs).map(|(m, (a, b, den))| {
                    let s = Scalar::eisenstein(a, b);
                    (m, s.div(&Scalar::from_int(den)).unwrap())
                });
                HomogeneousPolynomial::from_terms(d, terms, FieldTag::QW).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(f in arb_poly()) {
            prop_assume!(!f.is_zero());
            let text = f.to_string();
            prop_assert_eq!(parse_poly(&text, FieldTag::QW).unwrap(), f);
        }
    }
}
