//! Exact arithmetic: Gaussian rationals, sparse polynomials, rational
//! functions, partial fractions and linear algebra.

pub mod gcd;
pub mod linalg;
pub mod monomial;
pub mod partial;
pub mod poly;
pub mod ratfunc;
pub mod scalar;
pub mod univariate;

pub use gcd::poly_gcd;
pub use linalg::{nullspace, solve as solve_linear, LinearSolution};
pub use monomial::{Monomial, TermOrder, Vars};
pub use partial::{log_quadrature, partial_fractions, PartialFractionDecomposition, PartialFractionTerm, SymbolicExpIntegral};
pub use poly::{poly_divrem, DivRem, SparsePoly};
pub use ratfunc::RationalFunction;
pub use scalar::{GaussianRational, Scalar};
pub use univariate::{extract_roots, RootExtraction, UniPoly};
