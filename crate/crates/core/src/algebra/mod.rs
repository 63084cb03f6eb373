//! Exact kernel shared by every symbolic check: rationals, bivariate
//! polynomials, rational functions and deterministic linear solving.

mod linear;
mod poly;
mod ratfunc;
mod rational;

pub use linear::{mat_vec, nullspace, rank, rref_in_place, solve_linear, LinearSolution, Matrix};
pub use poly::{divides, Division, Monomial, Poly2};
pub use ratfunc::RatFunc2;
pub use rational::{format_rational, parse_rational, rat, ratio, serde_rational, sign, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("division by zero")]
    ZeroDivisor,
    #[error("cannot parse {0:?} as an exact rational")]
    ParseRational(String),
}
