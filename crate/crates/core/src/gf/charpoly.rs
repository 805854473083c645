//! Characteristic polynomial by Krylov cyclic spinning.
//!
//! Starting from standard basis vectors, each cycle spins v, vM, vM², …
//! until the new iterate falls into the span of everything seen so far; the
//! coefficients of that dependency (tracked alongside each reduction) form
//! the relative minimal polynomial of the cycle, and the characteristic
//! polynomial is the product over cycles. Correctness is pinned by
//! Cayley–Hamilton and cross-backing tests rather than by the method.

use super::matrix::FieldMatrix;
use super::poly::FieldPoly;
use super::scalar::invm;
use super::vector::FieldVector;
use super::GfError;

/// Row-echelon accumulator whose rows carry optional coefficient tracks
/// (coordinates in terms of the current cycle's Krylov iterates).
struct TrackedRef {
    rows: Vec<FieldVector>,
    tracks: Vec<Option<FieldVector>>,
    pivots: Vec<usize>,
    is_pivot: Vec<bool>,
}

impl TrackedRef {
    fn new(width: usize) -> Self {
        TrackedRef {
            rows: Vec::new(),
            tracks: Vec::new(),
            pivots: Vec::new(),
            is_pivot: vec![false; width],
        }
    }

    /// Reduce `v` (and its track `t`) against the stored rows in pivot order.
    fn reduce(&self, v: &mut FieldVector, t: &mut FieldVector) {
        for (i, row) in self.rows.iter().enumerate() {
            let c = v.get(self.pivots[i]);
            if c != 0 {
                v.sub_scaled(row, c);
                if let Some(track) = &self.tracks[i] {
                    t.sub_scaled(track, c);
                }
            }
        }
    }

    /// Insert an already-reduced nonzero vector, normalizing its pivot to 1.
    fn insert(&mut self, mut v: FieldVector, mut t: FieldVector, p: u8) {
        let pivot = v.first_nonzero().expect("inserting zero row");
        let lead = v.get(pivot);
        if lead != 1 {
            let inv = invm(lead, p);
            v.scale(inv);
            t.scale(inv);
        }
        let pos = self.pivots.partition_point(|&c| c < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, v);
        self.tracks.insert(pos, Some(t));
        self.is_pivot[pivot] = true;
    }

    fn clear_tracks(&mut self) {
        for t in self.tracks.iter_mut() {
            *t = None;
        }
    }
}

/// Monic characteristic polynomial of a square matrix over GF(p).
pub fn char_poly(m: &FieldMatrix) -> Result<FieldPoly, GfError> {
    if !m.is_square() {
        return Err(GfError::NotSquare(m.nrows(), m.ncols()));
    }
    let n = m.nrows();
    let p = m.prime();
    let mut acc = FieldPoly::one(p);
    if n == 0 {
        return Ok(acc);
    }
    let mut space = TrackedRef::new(n);
    let mut dim = 0;
    let mut seed_from = 0;
    while dim < n {
        // A standard basis vector whose index is not a pivot is independent
        // of the echelon span, so it starts a fresh cycle.
        let j = (seed_from..n).find(|&j| !space.is_pivot[j]).expect("span incomplete");
        seed_from = j + 1;
        let mut raw = FieldVector::unit(p, n, j);
        let mut k = 0usize;
        loop {
            // Track vector: raw = v·M^k gets coordinate x^k.
            let mut red = raw.clone();
            let mut track = FieldVector::unit(p, n + 1, k);
            space.reduce(&mut red, &mut track);
            if red.is_zero() {
                // The dependency Σ track[t]·v·M^t = 0 (mod previous cycles)
                // is the relative minimal polynomial of this cycle; track[k]
                // stayed 1, so it is monic of degree k.
                let coeffs: Vec<u8> = (0..=k).map(|t| track.get(t)).collect();
                debug_assert_eq!(coeffs[k], 1);
                acc = acc.mul(&FieldPoly::from_coeffs(p, &coeffs));
                space.clear_tracks();
                dim += k;
                break;
            }
            space.insert(red, track, p);
            raw = raw.mul_mat(m);
            k += 1;
        }
    }
    debug_assert_eq!(acc.degree(), Some(n));
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_nilpotent() {
        // I₂ over GF(2) → (x+1)² = x²+1.
        let eye = FieldMatrix::identity(2, 2);
        assert_eq!(char_poly(&eye).unwrap(), FieldPoly::from_coeffs(2, &[1, 0, 1]));
        // Strictly upper triangular 3×3 → x³.
        let mut nil = FieldMatrix::zeros(2, 3, 3);
        nil.set(0, 1, 1);
        nil.set(1, 2, 1);
        assert_eq!(char_poly(&nil).unwrap(), FieldPoly::monomial(2, 1, 3));
    }

    #[test]
    fn jordan_block_gf2() {
        // J₃ over GF(2) → (x+1)³ = x³+x²+x+1.
        let j3 = FieldMatrix::from_entries(2, 3, 3, &[1, 1, 0, 0, 1, 1, 0, 0, 1]);
        assert_eq!(char_poly(&j3).unwrap(), FieldPoly::from_coeffs(2, &[1, 1, 1, 1]));
    }

    #[test]
    fn companion_matrix_gf5() {
        // Companion matrix of f = x³ + 2x + 3 over GF(5) (row convention:
        // e_i ↦ e_{i+1}): char poly = f.
        let f = FieldPoly::from_coeffs(5, &[3, 2, 0, 1]);
        let mut c = FieldMatrix::zeros(5, 3, 3);
        c.set(0, 1, 1);
        c.set(1, 2, 1);
        // Last row: −coeffs = (−3, −2, −0) = (2, 3, 0).
        c.set(2, 0, 2);
        c.set(2, 1, 3);
        assert_eq!(char_poly(&c).unwrap(), f);
    }

    #[test]
    fn cayley_hamilton_spot() {
        let m = FieldMatrix::from_entries(3, 4, 4, &[1, 2, 0, 1, 0, 1, 1, 2, 2, 0, 1, 1, 1, 1, 0, 2]);
        let cp = char_poly(&m).unwrap();
        assert_eq!(cp.degree(), Some(4));
        assert!(cp.is_monic());
        assert!(cp.eval_matrix(&m).unwrap().is_zero());
    }
}
