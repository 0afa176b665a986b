//! Exact matrix algebra over the integers and the rationals.
//!
//! Everything here is arbitrary precision. Integer matrices are reduced with
//! unimodular transformations that are returned alongside the normal forms, so
//! callers can always check `U·M = H` or `U·M·V = D` by plain multiplication.

mod diophantine;
mod error;
mod hnf;
mod lattice;
mod matrix;
mod rational;
mod snf;

pub use diophantine::{solve_diophantine, DioOutcome, DioSolution, Infeasibility, InfeasibleReason};
pub use error::LinalgError;
pub use hnf::hnf;
pub use lattice::{complete_basis, saturate};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use rational::{format_rational, int_vec_to_rational, parse_rational, rational_vec_to_int, Rational};
pub use snf::{snf, Smith};

pub use num_bigint::BigInt;

/// Basis of `{v : M·v = 0}` over the rationals.
pub fn rational_kernel(m: &RatMatrix) -> Vec<Vec<Rational>> {
    m.kernel()
}
