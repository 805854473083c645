//! Dense linear algebra over prime fields GF(p).
//!
//! Matrices over GF(2) are bit-packed (64 columns per machine word) with a
//! four-Russians blocked multiply; every other prime p < 2⁸ uses a
//! byte-per-entry reference implementation. The two paths expose one
//! interface, [`FieldMatrix`], and must agree bit-for-bit at p = 2 — an
//! equivalence the test suite enforces on randomized instances.

mod charpoly;
mod factor;
mod gf2poly;
mod matrix;
mod packed;
mod poly;
pub mod reference;
mod rowspace;
mod scalar;
mod vector;

pub use charpoly::char_poly;
pub use factor::factor_poly;
pub(crate) use factor::distinct_factors_upto;
pub use matrix::FieldMatrix;
pub use poly::FieldPoly;
pub use rowspace::{RowSpace, SubspaceSolver};
pub use vector::FieldVector;

use thiserror::Error;

/// Errors from field linear algebra and polynomial arithmetic.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("dimension mismatch in {op}: left is {lhs}, right is {rhs}")]
    DimensionMismatch { op: &'static str, lhs: String, rhs: String },
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u8, u8),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("the zero polynomial cannot be factored or divided by")]
    ZeroPolynomial,
    #[error("equal-degree splitting over GF({p}) at degree {degree} exceeds exponent range")]
    SplitDegree { p: u8, degree: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Horner evaluation of f at a square matrix (free-function form of
/// [`FieldPoly::eval_matrix`]).
pub fn eval_poly(f: &FieldPoly, m: &FieldMatrix) -> Result<FieldMatrix, GfError> {
    f.eval_matrix(m)
}

impl FieldMatrix {
    /// Monic characteristic polynomial (degree = matrix dimension).
    pub fn char_poly(&self) -> Result<FieldPoly, GfError> {
        char_poly(self)
    }
}
