//! The `.lines` text format.
//!
//! ```text
//! # optional comments
//! field: Qw
//! 1 -w 0
//! 0 1 -1
//! ```
//!
//! Each data line holds the three coefficients `a b c` of `a x + b y + c z`,
//! written in the scalar grammar without inner whitespace.

use super::LineArrangement;
use crate::error::{Error, Result};
use crate::field::{parse_scalar, FieldTag};
use crate::poly::LinearForm;

/// Parses a `.lines` document.
///
/// The field is taken from `field:` if present, else from `field_hint`,
/// else inferred from the coefficients. A header and a hint that disagree,
/// or coefficients outside the declared field, give `FieldMismatch`.
pub fn parse_lines(text: &str, field_hint: Option<FieldTag>) -> Result<LineArrangement> {
    let mut declared: Option<FieldTag> = None;
    let mut lines = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let lineno = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = strip_prefix_ci(content, "field:") {
            if declared.is_some() || !lines.is_empty() {
                return Err(Error::FileSyntax {
                    line: lineno,
                    message: "field header must come before any line".into(),
                });
            }
            declared =
                Some(rest.parse().map_err(|e: Error| Error::FileSyntax { line: lineno, message: e.to_string() })?);
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(Error::FileSyntax {
                line: lineno,
                message: format!("expected 3 coefficients, found {}", tokens.len()),
            });
        }
        let mut coeffs = Vec::with_capacity(3);
        for tok in tokens {
            coeffs.push(
                parse_scalar(tok)
                    .map_err(|e| Error::FileSyntax { line: lineno, message: format!("in `{tok}`: {e}") })?,
            );
        }
        let coeffs: [_; 3] = coeffs.try_into().expect("three tokens");
        let form =
            LinearForm::from_coeffs(coeffs).map_err(|e| Error::FileSyntax { line: lineno, message: e.to_string() })?;
        lines.push(form);
    }
    let field = match (declared, field_hint) {
        (Some(h), Some(f)) if h != f => return Err(Error::FieldMismatch { expected: f, found: h }),
        (Some(f), _) | (None, Some(f)) => f,
        (None, None) => lines.iter().map(LinearForm::field).max().unwrap_or(FieldTag::Q),
    };
    LineArrangement::new(lines, field)
}

fn strip_prefix_ci<'a>(s: &'a str, prefix: &str) -> Option<&'a str> {
    let head = s.get(..prefix.len())?;
    head.eq_ignore_ascii_case(prefix).then(|| &s[prefix.len()..])
}
