//! Scalar reference implementations for cross-checking the bit-packed
//! GF(2) fast path.
//!
//! [`FieldMatrix`] transparently selects a bit-packed backing at p = 2, so
//! its public API cannot exercise the byte-per-entry code path there.  The
//! functions here recompute results with plain modular arithmetic at any
//! prime — and, for the characteristic polynomial, with an independent
//! Hessenberg-reduction algorithm — then re-wrap them in the public types.
//! The cross-validation suite asserts bit-exact agreement with the fast
//! path on randomized instances.

use super::scalar::{addm, invm, mulm, subm, ScalarMatrix};
use super::{FieldMatrix, FieldPoly, FieldVector, GfError};

fn to_scalar(m: &FieldMatrix) -> ScalarMatrix {
    let mut s = ScalarMatrix::zeros(m.prime(), m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            s.set(i, j, m.get(i, j));
        }
    }
    s
}

fn from_scalar(s: &ScalarMatrix) -> FieldMatrix {
    let mut entries = Vec::with_capacity(s.nrows() * s.ncols());
    for i in 0..s.nrows() {
        for j in 0..s.ncols() {
            entries.push(s.get(i, j));
        }
    }
    FieldMatrix::from_entries(s.prime(), s.nrows(), s.ncols(), &entries)
}

fn check_primes(a: &FieldMatrix, b: &FieldMatrix) -> Result<(), GfError> {
    if a.prime() != b.prime() {
        return Err(GfError::PrimeMismatch(a.prime(), b.prime()));
    }
    Ok(())
}

/// Matrix product by the schoolbook triple loop.
pub fn mat_mul(a: &FieldMatrix, b: &FieldMatrix) -> Result<FieldMatrix, GfError> {
    check_primes(a, b)?;
    if a.ncols() != b.nrows() {
        return Err(GfError::DimensionMismatch {
            op: "mat_mul",
            lhs: format!("{}x{}", a.nrows(), a.ncols()),
            rhs: format!("{}x{}", b.nrows(), b.ncols()),
        });
    }
    Ok(from_scalar(&to_scalar(a).mul(&to_scalar(b))))
}

/// Entrywise sum.
pub fn add(a: &FieldMatrix, b: &FieldMatrix) -> Result<FieldMatrix, GfError> {
    check_primes(a, b)?;
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return Err(GfError::DimensionMismatch {
            op: "add",
            lhs: format!("{}x{}", a.nrows(), a.ncols()),
            rhs: format!("{}x{}", b.nrows(), b.ncols()),
        });
    }
    Ok(from_scalar(&to_scalar(a).add(&to_scalar(b))))
}

/// Rank by plain Gaussian elimination.
pub fn rank(m: &FieldMatrix) -> usize {
    to_scalar(m).rank()
}

/// Canonical right-kernel basis (one vector per free column, ascending).
pub fn nullspace_basis(m: &FieldMatrix) -> Vec<FieldVector> {
    to_scalar(m)
        .right_nullspace()
        .iter()
        .map(|s| {
            let mut v = FieldVector::zeros(m.prime(), m.ncols());
            for j in 0..m.ncols() {
                v.set(j, s.get(j));
            }
            v
        })
        .collect()
}

/// Inverse by Gauss-Jordan elimination on the augmented matrix.
pub fn mat_inverse(m: &FieldMatrix) -> Result<FieldMatrix, GfError> {
    if !m.is_square() {
        return Err(GfError::NotSquare(m.nrows(), m.ncols()));
    }
    match to_scalar(m).inverse() {
        Some(inv) => Ok(from_scalar(&inv)),
        None => Err(GfError::Singular),
    }
}

/// Monic characteristic polynomial det(xI − M) via similarity reduction to
/// upper Hessenberg form and the principal-minor recurrence — an algorithm
/// independent of the Krylov-spinning fast path.
pub fn char_poly(m: &FieldMatrix) -> Result<FieldPoly, GfError> {
    if !m.is_square() {
        return Err(GfError::NotSquare(m.nrows(), m.ncols()));
    }
    let p = m.prime();
    let n = m.nrows();
    let mut h = to_scalar(m);
    for j in 0..n.saturating_sub(2) {
        let Some(r) = ((j + 1)..n).find(|&r| h.get(r, j) != 0) else {
            continue;
        };
        if r != j + 1 {
            for c in 0..n {
                let t = h.get(r, c);
                h.set(r, c, h.get(j + 1, c));
                h.set(j + 1, c, t);
            }
            for i in 0..n {
                let t = h.get(i, r);
                h.set(i, r, h.get(i, j + 1));
                h.set(i, j + 1, t);
            }
        }
        let inv = invm(h.get(j + 1, j), p);
        for i in (j + 2)..n {
            let f = mulm(h.get(i, j), inv, p);
            if f == 0 {
                continue;
            }
            // Row op clears h[i][j]; the matching column op keeps similarity.
            for c in 0..n {
                h.set(i, c, subm(h.get(i, c), mulm(f, h.get(j + 1, c), p), p));
            }
            for r in 0..n {
                h.set(r, j + 1, addm(h.get(r, j + 1), mulm(f, h.get(r, i), p), p));
            }
        }
    }
    // p_0 = 1;  p_m = (x − h_mm) p_{m−1} − Σ_k h_{m−k,m} (Π subdiagonals) p_{m−k−1}.
    let mut minors: Vec<FieldPoly> = vec![FieldPoly::one(p)];
    for m1 in 1..=n {
        let linear = FieldPoly::from_coeffs(p, &[subm(0, h.get(m1 - 1, m1 - 1), p), 1]);
        let mut acc = linear.mul(&minors[m1 - 1]);
        let mut beta = 1u8;
        for k in 1..m1 {
            beta = mulm(beta, h.get(m1 - k, m1 - k - 1), p);
            if beta == 0 {
                break;
            }
            let coef = mulm(h.get(m1 - 1 - k, m1 - 1), beta, p);
            if coef != 0 {
                acc = acc.sub(&minors[m1 - 1 - k].scale(coef));
            }
        }
        minors.push(acc);
    }
    Ok(minors.pop().expect("n + 1 entries"))
}
