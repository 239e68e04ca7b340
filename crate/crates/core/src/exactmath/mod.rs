//! Exact arithmetic over Q: rationals, polynomials, and linear algebra.

pub mod det;
pub mod gcd;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod sparse;
pub mod unipoly;

pub use det::poly_matrix_det;
pub use gcd::poly_gcd;
pub use matrix::{primitive_integer_vector, rref_rows, subspace_dim, RatMatrix};
pub use poly::{binomial, count_monomials, monomials_of_degree, pivot_index, reduce_mod_form, Monomial, MultiPoly};
pub use rational::{common_denominator, ParseRationalError, Rational};
pub use sparse::{sparse_from_dense, sparse_kernel, sparse_to_dense, Echelon, SparseVec};
pub use unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MathError {
    #[error("polynomials live in different rings ({left} vs {right} variables)")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("expected a nonzero homogeneous linear form")]
    NotALinearForm,
    #[error("gcd of an empty or all-zero list")]
    AllZeroGcd,
    #[error("matrix is not square")]
    NotSquare,
    #[error("division was not exact")]
    InexactDivision,
}
