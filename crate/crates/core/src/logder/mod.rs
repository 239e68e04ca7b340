//! Logarithmic derivations: graded pieces of `D(A)`, minimal generator
//! degrees, freeness, and the addition construction.

mod criteria;
mod derivation;
mod freeness;
mod graded;

pub use criteria::{
    check_3nonfree, check_4gens_freeness, check_nonfree_criterion, check_numgen_bounds, generator_degree_lower_bound,
    three_nonfree_applies, FourGensReport, NonfreeReport, NumgenCase, NumgenReport, ThreeNonfreeReport, Verdict,
};
pub use derivation::Derivation;
pub use freeness::{
    addition_from_generators, addition_generators, is_free, point_off_arrangement, saito_ratio, terao_b_poly,
    AdditionResult, FreenessCertificate,
};
pub use graded::{
    default_cap, degree_sequence, graded_dim, minimality_report, regularity_bound, span_dim_ambient, DegreeOptions,
    DegreeSequence, GradedPiece, MinimalityEntry,
};

use crate::arrangement::ArrangementError;
use crate::exactmath::MathError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LogderError {
    #[error("malformed derivation: {0}")]
    Malformed(String),
    #[error("the arrangement is not essential")]
    NotEssential,
    #[error("the degree search stopped at its cap before the bound was reached")]
    Incomplete,
    #[error("{0} already belongs to the arrangement")]
    Member(String),
    #[error("every generator is tangent to {0}")]
    Degenerate(String),
    #[error("b-polynomial has degree {got}, expected {expected}")]
    DegreeIdentity { expected: u32, got: u32 },
    #[error("addition condition ({condition}) fails: {detail}")]
    AdditionCondition { condition: u8, detail: String },
    #[error("an image is not a constant multiple of the b-polynomial")]
    NonConstantCoefficient,
    #[error("no point off the arrangement found in {0} attempts")]
    PointSearchExhausted(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Math(#[from] MathError),
}
