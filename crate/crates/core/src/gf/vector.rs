//! Field-generic vectors: packed bits for GF(2), bytes otherwise.

use super::matrix::FieldMatrix;
use super::packed::PackedVec;
use super::scalar::{mulm, ScalarVec};

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum VecBacking {
    Packed(PackedVec),
    Scalar(ScalarVec),
}

/// Vector over GF(p). Backed by packed words exactly when p = 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldVector {
    pub(crate) inner: VecBacking,
}

impl FieldVector {
    pub fn zeros(p: u8, len: usize) -> Self {
        let inner = if p == 2 {
            VecBacking::Packed(PackedVec::zeros(len))
        } else {
            VecBacking::Scalar(ScalarVec::zeros(p, len))
        };
        FieldVector { inner }
    }

    pub fn unit(p: u8, len: usize, j: usize) -> Self {
        let mut v = Self::zeros(p, len);
        v.set(j, 1);
        v
    }

    pub fn from_entries(p: u8, entries: &[u8]) -> Self {
        let mut v = Self::zeros(p, entries.len());
        for (j, &e) in entries.iter().enumerate() {
            v.set(j, e % p);
        }
        v
    }

    pub(crate) fn from_packed(v: PackedVec) -> Self {
        FieldVector { inner: VecBacking::Packed(v) }
    }

    pub(crate) fn from_scalar(v: ScalarVec) -> Self {
        FieldVector { inner: VecBacking::Scalar(v) }
    }

    pub fn prime(&self) -> u8 {
        match &self.inner {
            VecBacking::Packed(_) => 2,
            VecBacking::Scalar(v) => v.prime(),
        }
    }

    pub fn len(&self) -> usize {
        match &self.inner {
            VecBacking::Packed(v) => v.len(),
            VecBacking::Scalar(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn get(&self, j: usize) -> u8 {
        match &self.inner {
            VecBacking::Packed(v) => v.get(j),
            VecBacking::Scalar(v) => v.get(j),
        }
    }

    #[inline]
    pub fn set(&mut self, j: usize, val: u8) {
        match &mut self.inner {
            VecBacking::Packed(v) => v.set(j, val),
            VecBacking::Scalar(v) => v.set(j, val),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.inner {
            VecBacking::Packed(v) => v.is_zero(),
            VecBacking::Scalar(v) => v.is_zero(),
        }
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        match &self.inner {
            VecBacking::Packed(v) => v.first_set(),
            VecBacking::Scalar(v) => v.first_nonzero(),
        }
    }

    /// self ← self − c·rhs
    pub fn sub_scaled(&mut self, rhs: &FieldVector, c: u8) {
        match (&mut self.inner, &rhs.inner) {
            (VecBacking::Packed(a), VecBacking::Packed(b)) => {
                if c & 1 == 1 {
                    a.xor_assign(b);
                }
            }
            (VecBacking::Scalar(a), VecBacking::Scalar(b)) => a.sub_scaled(b, c),
            _ => panic!("mixed vector backings"),
        }
    }

    /// self ← self + c·rhs (same as sub_scaled at p = 2).
    pub fn add_scaled(&mut self, rhs: &FieldVector, c: u8) {
        let p = self.prime();
        self.sub_scaled(rhs, (p - c % p) % p);
    }

    pub fn scale(&mut self, c: u8) {
        match &mut self.inner {
            VecBacking::Packed(v) => {
                if c & 1 == 0 {
                    *v = PackedVec::zeros(v.len());
                }
            }
            VecBacking::Scalar(v) => v.scale(c),
        }
    }

    pub fn dot(&self, rhs: &FieldVector) -> u8 {
        match (&self.inner, &rhs.inner) {
            (VecBacking::Packed(a), VecBacking::Packed(b)) => a.dot(b),
            (VecBacking::Scalar(a), VecBacking::Scalar(b)) => a.dot(b),
            _ => panic!("mixed vector backings"),
        }
    }

    /// Row action v·M.
    pub fn mul_mat(&self, m: &FieldMatrix) -> FieldVector {
        m.vec_mul(self)
    }

    pub fn to_entries(&self) -> Vec<u8> {
        (0..self.len()).map(|j| self.get(j)).collect()
    }

    /// Entrywise scalar multiple as a new vector.
    pub fn scaled(&self, c: u8) -> FieldVector {
        let mut out = self.clone();
        match &mut out.inner {
            VecBacking::Packed(v) => {
                if c & 1 == 0 {
                    *v = PackedVec::zeros(v.len());
                }
            }
            VecBacking::Scalar(v) => {
                let p = v.prime();
                for j in 0..v.len() {
                    let x = v.get(j);
                    v.set(j, mulm(x, c, p));
                }
            }
        }
        out
    }
}
