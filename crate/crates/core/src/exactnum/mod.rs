//! Exact scalar, polynomial, matrix and sequence algebra.

pub mod json;
pub mod matrix;
pub mod mpoly;
pub mod poly;
pub mod recurrence;
pub mod scalar;

pub use matrix::{charpoly, minpoly_matrix, Matrix};
pub use mpoly::{poly_arithmetic, ExactPoly, MPoly, PolyOp};
pub use poly::Poly;
pub use recurrence::{berlekamp_massey, min_recurrence, LfsrFit, Recurrence};
pub use scalar::Scalar;

/// Largest `k` such that `(x - theta)^k` divides `p`.
pub fn root_multiplicity(p: &Poly, theta: &Scalar) -> crate::error::Result<usize> {
    p.root_multiplicity(theta)
}
