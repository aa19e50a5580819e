//! Exact tests for freeness and near-freeness of plane curves and line
//! arrangements, driven by the minimal degree of a Jacobian relation.
//!
//! Arithmetic is exact over `Q` or `Q(w)` with `w^2 + w + 1 = 0`.

pub mod arrangement;
pub mod classify;
pub mod criteria;
pub mod error;
pub mod exec;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod report;
mod text;

pub use arrangement::{catalog, LineArrangement, ProjectivePoint, SingularPoint, WeakCombinatorics, CATALOG_NAMES};
pub use criteria::{analyze_curve, eta, mdr, mdr_with, verdict, MdrOptions, MdrResult, Verdict};
pub use error::{Error, Result};
pub use exec::Execution;
pub use field::{FieldTag, Rational, Scalar};
pub use linalg::{Elimination, ExactMatrix};
pub use poly::{parse_poly, HomogeneousPolynomial, LinearForm, Monomial, Var};
pub use report::{analyze_arrangement, analyze_polynomial, AnalysisReport, DeformationReport};
