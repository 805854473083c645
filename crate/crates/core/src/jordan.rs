//! Jordan types of unipotent matrices over prime fields.
//!
//! A unipotent matrix `m` (one with `(m - I)^n = 0`) is conjugate to a direct
//! sum of full Jordan blocks with eigenvalue 1; the multiset of block sizes is
//! its *Jordan type*, written `(d_1^{n_1}, ..., d_t^{n_t})`.  The type is
//! recovered from the rank sequence of `X = m - I`: with `r_k = rank(X^k)` and
//! `r_0 = n`, the number of blocks of size `k` is `r_{k-1} - 2 r_k + r_{k+1}`.
//!
//! Only eigenvalue-1 (unipotent) input is supported; anything else is
//! rejected with [`Error::NotUnipotent`] rather than silently generalized.

use crate::error::Error;
use crate::gf::FieldMatrix;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Multiset of Jordan block sizes of a unipotent matrix.
///
/// Stored as `(size, multiplicity)` pairs with sizes strictly increasing and
/// multiplicities positive; the weighted sum of sizes is the dimension of the
/// underlying space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JordanType {
    blocks: Vec<(usize, usize)>,
}

impl JordanType {
    /// Builds a type from `(size, multiplicity)` pairs, validating the
    /// invariants (sizes strictly increasing and positive, multiplicities
    /// positive).
    pub fn new(blocks: Vec<(usize, usize)>) -> Result<Self, Error> {
        for (i, &(size, mult)) in blocks.iter().enumerate() {
            if size == 0 {
                return Err(Error::InvalidJordanType("block size 0".into()));
            }
            if mult == 0 {
                return Err(Error::InvalidJordanType(format!(
                    "block size {size} has multiplicity 0"
                )));
            }
            if i > 0 && blocks[i - 1].0 >= size {
                return Err(Error::InvalidJordanType(
                    "block sizes not strictly increasing".into(),
                ));
            }
        }
        Ok(JordanType { blocks })
    }

    /// The type with `mult` blocks, all of the same `size`.
    pub fn uniform(size: usize, mult: usize) -> Self {
        assert!(size > 0, "block size must be positive");
        let blocks = if mult == 0 { vec![] } else { vec![(size, mult)] };
        JordanType { blocks }
    }

    /// The `(size, multiplicity)` pairs, sizes ascending.
    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    /// Total dimension: sum of size times multiplicity.
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|&(s, m)| s * m).sum()
    }

    /// Size of the largest block; 0 for the empty type.
    pub fn largest_block(&self) -> usize {
        self.blocks.last().map_or(0, |&(s, _)| s)
    }

    /// True when every block has the given size.
    pub fn all_blocks_equal(&self, size: usize) -> bool {
        match self.blocks.as_slice() {
            [(s, _)] => *s == size,
            [] => true,
            _ => false,
        }
    }

    /// A unipotent block-diagonal matrix over GF(`p`) with this type: one
    /// full Jordan block (ones on the superdiagonal) per entry of the
    /// multiset.
    pub fn block_matrix(&self, p: u8) -> FieldMatrix {
        let n = self.dimension();
        let mut m = FieldMatrix::identity(p, n);
        let mut offset = 0;
        for &(size, mult) in &self.blocks {
            for _ in 0..mult {
                for i in 0..size - 1 {
                    m.set(offset + i, offset + i + 1, 1);
                }
                offset += size;
            }
        }
        m
    }
}

impl fmt::Display for JordanType {
    /// Renders as `(2^2, 6)`: exponents elided when the multiplicity is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &(size, mult)) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if mult == 1 {
                write!(f, "{size}")?;
            } else {
                write!(f, "{size}^{mult}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for JordanType {
    /// Serializes as an array of `[size, multiplicity]` pairs sorted by size.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.blocks.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for JordanType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let blocks = Vec::<(usize, usize)>::deserialize(deserializer)?;
        JordanType::new(blocks).map_err(D::Error::custom)
    }
}

/// Rank sequence of the nilpotent part.  Returns `(ranks, nilpotent)` where
/// `ranks[k] = rank(x^k)` (so `ranks[0]` is the dimension).  Stops as soon as
/// the rank reaches 0 (`nilpotent = true`) or stabilizes at a nonzero value
/// (`nilpotent = false`; once `rank(x^{k+1}) = rank(x^k)` the sequence is
/// constant forever, so `x` cannot be nilpotent).
fn rank_sequence(x: &FieldMatrix) -> (Vec<usize>, bool) {
    let n = x.nrows();
    let mut ranks = vec![n];
    if n == 0 {
        return (ranks, true);
    }
    let mut power = x.clone();
    loop {
        let r = power.rank();
        let prev = *ranks.last().unwrap();
        ranks.push(r);
        if r == 0 {
            return (ranks, true);
        }
        if r == prev {
            return (ranks, false);
        }
        power = power.mat_mul(x).expect("square powers compose");
    }
}

fn nilpotent_part(m: &FieldMatrix) -> Result<FieldMatrix, Error> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            nrows: m.nrows(),
            ncols: m.ncols(),
        });
    }
    let eye = FieldMatrix::identity(m.prime(), m.nrows());
    Ok(m.sub(&eye).expect("same shape"))
}

/// True iff `(m - I)^n = 0` for `n = nrows`, i.e. `m` is unipotent.
pub fn is_unipotent(m: &FieldMatrix) -> Result<bool, Error> {
    let x = nilpotent_part(m)?;
    let (_, nilpotent) = rank_sequence(&x);
    Ok(nilpotent)
}

/// Jordan type of a unipotent matrix via the rank sequence of `X = m - I`.
pub fn jordan_type(m: &FieldMatrix) -> Result<JordanType, Error> {
    let x = nilpotent_part(m)?;
    let (mut ranks, nilpotent) = rank_sequence(&x);
    if !nilpotent {
        return Err(Error::NotUnipotent);
    }
    // ranks now ends with the first zero: ranks[e] = 0 at the nilpotency
    // index e.  One extra zero supplies r_{k+1} for the largest block size.
    ranks.push(0);
    let n = ranks[0];
    let mut blocks = Vec::new();
    let mut total = 0;
    for k in 1..ranks.len() - 1 {
        let (rm1, rk, rp1) = (ranks[k - 1], ranks[k], ranks[k + 1]);
        assert!(
            rm1 + rp1 >= 2 * rk,
            "rank sequence not convex at k={k}: {rm1},{rk},{rp1}"
        );
        let mult = rm1 + rp1 - 2 * rk;
        if mult > 0 {
            blocks.push((k, mult));
            total += k * mult;
        }
    }
    assert_eq!(total, n, "block sizes must account for the full dimension");
    Ok(JordanType { blocks })
}

/// Order of a unipotent matrix: the smallest power `p^k` that is at least the
/// largest Jordan block size (and therefore the smallest with `m^{p^k} = I`).
pub fn unipotent_order(m: &FieldMatrix) -> Result<u64, Error> {
    let jt = jordan_type(m)?;
    let p = m.prime() as u64;
    let d_max = jt.largest_block() as u64;
    let mut order = 1u64;
    while order < d_max {
        order *= p;
    }
    Ok(order)
}

/// Jordan type of the Kronecker product of two unipotent matrices over the
/// same prime.
pub fn jordan_type_tensor(a: &FieldMatrix, b: &FieldMatrix) -> Result<JordanType, Error> {
    let prod = a.kronecker(b)?;
    jordan_type(&prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn jt(pairs: &[(usize, usize)]) -> JordanType {
        JordanType::new(pairs.to_vec()).unwrap()
    }

    fn random_invertible(p: u8, n: usize, rng: &mut ChaCha8Rng) -> FieldMatrix {
        loop {
            let entries: Vec<u8> = (0..n * n).map(|_| rng.gen_range(0..p)).collect();
            let g = FieldMatrix::from_entries(p, n, n, &entries);
            if g.mat_inverse().is_ok() {
                return g;
            }
        }
    }

    #[test]
    fn identity_is_unipotent_type_1n() {
        let m = FieldMatrix::identity(3, 5);
        assert!(is_unipotent(&m).unwrap());
        assert_eq!(jordan_type(&m).unwrap(), jt(&[(1, 5)]));
        assert_eq!(unipotent_order(&m).unwrap(), 1);
    }

    #[test]
    fn non_unipotent_rejected() {
        let m = FieldMatrix::from_entries(3, 2, 2, &[1, 0, 0, 2]);
        assert!(!is_unipotent(&m).unwrap());
        assert!(matches!(jordan_type(&m), Err(Error::NotUnipotent)));
        assert!(matches!(unipotent_order(&m), Err(Error::NotUnipotent)));
    }

    #[test]
    fn rectangular_rejected() {
        let m = FieldMatrix::zeros(2, 2, 3);
        assert!(matches!(is_unipotent(&m), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn single_block_order() {
        // J6 over GF(2): order 8 since 4 < 6 <= 8.  Confirm by powering.
        let m = jt(&[(6, 1)]).block_matrix(2);
        assert_eq!(jordan_type(&m).unwrap(), jt(&[(6, 1)]));
        assert_eq!(unipotent_order(&m).unwrap(), 8);
        assert!(!m.pow(4).unwrap().is_identity());
        assert!(m.pow(8).unwrap().is_identity());
    }

    #[test]
    fn conjugated_block_diagonal_recovers_type() {
        // J3 + J3 + J1 over GF(2), conjugated by random invertible matrices.
        let ty = jt(&[(1, 1), (3, 2)]);
        let m = ty.block_matrix(2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let g = random_invertible(2, 7, &mut rng);
            let conj = g
                .mat_mul(&m)
                .unwrap()
                .mat_mul(&g.mat_inverse().unwrap())
                .unwrap();
            assert_eq!(jordan_type(&conj).unwrap(), ty);
        }
    }

    #[test]
    fn conjugation_invariance_gf3() {
        let ty = jt(&[(2, 2), (4, 1)]);
        let m = ty.block_matrix(3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let g = random_invertible(3, 8, &mut rng);
            let conj = g
                .mat_mul(&m)
                .unwrap()
                .mat_mul(&g.mat_inverse().unwrap())
                .unwrap();
            assert_eq!(jordan_type(&conj).unwrap(), ty);
        }
    }

    #[test]
    fn tensor_types_over_gf2() {
        let j = |n: usize| jt(&[(n, 1)]).block_matrix(2);
        // J1 tensor M leaves the type unchanged.
        assert_eq!(
            jordan_type_tensor(&j(1), &j(5)).unwrap(),
            jt(&[(5, 1)])
        );
        assert_eq!(jordan_type_tensor(&j(2), &j(2)).unwrap(), jt(&[(2, 2)]));
        assert_eq!(jordan_type_tensor(&j(2), &j(6)).unwrap(), jt(&[(6, 2)]));
        assert_eq!(
            jordan_type_tensor(&j(6), &j(6)).unwrap(),
            jt(&[(2, 2), (8, 4)])
        );
    }

    #[test]
    fn tensor_prime_mismatch() {
        let a = FieldMatrix::identity(2, 2);
        let b = FieldMatrix::identity(3, 2);
        assert!(jordan_type_tensor(&a, &b).is_err());
    }

    #[test]
    fn round_trip_random_types() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for p in [2u8, 3, 5] {
            for _ in 0..10 {
                let mut sizes: Vec<usize> = (1..=6).collect();
                // Pick a few distinct sizes with random multiplicities.
                let keep = rng.gen_range(1..=3);
                while sizes.len() > keep {
                    let drop = rng.gen_range(0..sizes.len());
                    sizes.remove(drop);
                }
                let blocks: Vec<(usize, usize)> =
                    sizes.iter().map(|&s| (s, rng.gen_range(1..=3))).collect();
                let ty = jt(&blocks);
                assert_eq!(jordan_type(&ty.block_matrix(p)).unwrap(), ty);
            }
        }
    }

    #[test]
    fn order_divides_p_ceil_log() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let s1 = rng.gen_range(1..=5);
            let s2 = rng.gen_range(1..=5);
            let (lo, hi) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
            let blocks = if lo == hi {
                vec![(lo, 2)]
            } else {
                vec![(lo, 1), (hi, 1)]
            };
            let ty = jt(&blocks);
            let m = ty.block_matrix(2);
            let n = m.nrows() as u32;
            let order = unipotent_order(&m).unwrap();
            let bound = 2u64.pow(n.next_power_of_two().trailing_zeros());
            // order divides 2^{ceil(log2 n)}; both are powers of 2.
            assert_eq!(bound % order, 0);
        }
    }

    #[test]
    fn display_and_json() {
        let ty = jt(&[(2, 2), (6, 1)]);
        assert_eq!(ty.to_string(), "(2^2, 6)");
        assert_eq!(serde_json::to_string(&ty).unwrap(), "[[2,2],[6,1]]");
        let back: JordanType = serde_json::from_str("[[2,2],[6,1]]").unwrap();
        assert_eq!(back, ty);
        assert!(serde_json::from_str::<JordanType>("[[6,1],[2,2]]").is_err());
        assert_eq!(jt(&[]).to_string(), "()");
        assert_eq!(jt(&[(1, 4)]).to_string(), "(1^4)");
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(JordanType::new(vec![(0, 1)]).is_err());
        assert!(JordanType::new(vec![(2, 0)]).is_err());
        assert!(JordanType::new(vec![(3, 1), (2, 1)]).is_err());
        assert!(JordanType::new(vec![(2, 1), (2, 1)]).is_err());
    }

    #[test]
    fn uniform_and_accessors() {
        let ty = JordanType::uniform(8, 4);
        assert_eq!(ty.dimension(), 32);
        assert_eq!(ty.largest_block(), 8);
        assert!(ty.all_blocks_equal(8));
        assert!(!ty.all_blocks_equal(4));
        assert!(JordanType::uniform(3, 0).blocks().is_empty());
        assert!(!jt(&[(2, 1), (4, 1)]).all_blocks_equal(4));
    }
}
