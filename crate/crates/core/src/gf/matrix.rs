//! `FieldMatrix`: the common dense-matrix carrier over GF(p).
//!
//! For p = 2 every matrix is backed by the bit-packed kernels; for every
//! other prime by the byte-per-entry reference kernels. The two backings
//! never mix inside one matrix, and all public operations validate shapes
//! and primes instead of panicking on user data.

use super::packed::PackedMatrix;
use super::scalar::ScalarMatrix;
use super::vector::{FieldVector, VecBacking};
use super::GfError;

pub(crate) fn is_prime(p: u8) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u16;
    (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum MatBacking {
    Packed(PackedMatrix),
    Scalar(ScalarMatrix),
}

/// Dense matrix over GF(p), fully reduced entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldMatrix {
    pub(crate) inner: MatBacking,
}

impl FieldMatrix {
    fn check_prime(p: u8) {
        assert!(is_prime(p), "{p} is not a prime");
    }

    pub fn zeros(p: u8, nrows: usize, ncols: usize) -> Self {
        Self::check_prime(p);
        let inner = if p == 2 {
            MatBacking::Packed(PackedMatrix::zeros(nrows, ncols))
        } else {
            MatBacking::Scalar(ScalarMatrix::zeros(p, nrows, ncols))
        };
        FieldMatrix { inner }
    }

    pub fn identity(p: u8, n: usize) -> Self {
        Self::check_prime(p);
        let inner = if p == 2 {
            MatBacking::Packed(PackedMatrix::identity(n))
        } else {
            MatBacking::Scalar(ScalarMatrix::identity(p, n))
        };
        FieldMatrix { inner }
    }

    /// Row-major construction; entries are reduced mod p.
    pub fn from_entries(p: u8, nrows: usize, ncols: usize, entries: &[u8]) -> Self {
        Self::check_prime(p);
        let inner = if p == 2 {
            MatBacking::Packed(PackedMatrix::from_entries(nrows, ncols, entries))
        } else {
            MatBacking::Scalar(ScalarMatrix::from_entries(p, nrows, ncols, entries))
        };
        FieldMatrix { inner }
    }

    pub(crate) fn from_packed(m: PackedMatrix) -> Self {
        FieldMatrix { inner: MatBacking::Packed(m) }
    }

    pub(crate) fn from_scalar(m: ScalarMatrix) -> Self {
        FieldMatrix { inner: MatBacking::Scalar(m) }
    }

    #[cfg(test)]
    pub(crate) fn packed(&self) -> Option<&PackedMatrix> {
        match &self.inner {
            MatBacking::Packed(m) => Some(m),
            MatBacking::Scalar(_) => None,
        }
    }

    pub fn prime(&self) -> u8 {
        match &self.inner {
            MatBacking::Packed(_) => 2,
            MatBacking::Scalar(m) => m.prime(),
        }
    }

    pub fn nrows(&self) -> usize {
        match &self.inner {
            MatBacking::Packed(m) => m.nrows(),
            MatBacking::Scalar(m) => m.nrows(),
        }
    }

    pub fn ncols(&self) -> usize {
        match &self.inner {
            MatBacking::Packed(m) => m.ncols(),
            MatBacking::Scalar(m) => m.ncols(),
        }
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        match &self.inner {
            MatBacking::Packed(m) => m.get(i, j),
            MatBacking::Scalar(m) => m.get(i, j),
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        match &mut self.inner {
            MatBacking::Packed(m) => m.set(i, j, v),
            MatBacking::Scalar(m) => m.set(i, j, v),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.inner {
            MatBacking::Packed(m) => m.is_zero(),
            MatBacking::Scalar(m) => m.is_zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match &self.inner {
            MatBacking::Packed(m) => m.is_identity(),
            MatBacking::Scalar(m) => m.is_identity(),
        }
    }

    fn shape(&self) -> String {
        format!("{}x{}", self.nrows(), self.ncols())
    }

    fn check_same_prime(&self, rhs: &FieldMatrix) -> Result<(), GfError> {
        if self.prime() != rhs.prime() {
            return Err(GfError::PrimeMismatch(self.prime(), rhs.prime()));
        }
        Ok(())
    }

    /// Standard matrix product over GF(p).
    pub fn mat_mul(&self, rhs: &FieldMatrix) -> Result<FieldMatrix, GfError> {
        self.check_same_prime(rhs)?;
        if self.ncols() != rhs.nrows() {
            return Err(GfError::DimensionMismatch {
                op: "mat_mul",
                lhs: self.shape(),
                rhs: rhs.shape(),
            });
        }
        let inner = match (&self.inner, &rhs.inner) {
            (MatBacking::Packed(a), MatBacking::Packed(b)) => MatBacking::Packed(a.mul(b)),
            (MatBacking::Scalar(a), MatBacking::Scalar(b)) => MatBacking::Scalar(a.mul(b)),
            _ => unreachable!("equal primes imply equal backings"),
        };
        Ok(FieldMatrix { inner })
    }

    pub fn add(&self, rhs: &FieldMatrix) -> Result<FieldMatrix, GfError> {
        self.check_same_prime(rhs)?;
        if (self.nrows(), self.ncols()) != (rhs.nrows(), rhs.ncols()) {
            return Err(GfError::DimensionMismatch {
                op: "add",
                lhs: self.shape(),
                rhs: rhs.shape(),
            });
        }
        let inner = match (&self.inner, &rhs.inner) {
            (MatBacking::Packed(a), MatBacking::Packed(b)) => MatBacking::Packed(a.add(b)),
            (MatBacking::Scalar(a), MatBacking::Scalar(b)) => MatBacking::Scalar(a.add(b)),
            _ => unreachable!(),
        };
        Ok(FieldMatrix { inner })
    }

    pub fn sub(&self, rhs: &FieldMatrix) -> Result<FieldMatrix, GfError> {
        self.check_same_prime(rhs)?;
        if (self.nrows(), self.ncols()) != (rhs.nrows(), rhs.ncols()) {
            return Err(GfError::DimensionMismatch {
                op: "sub",
                lhs: self.shape(),
                rhs: rhs.shape(),
            });
        }
        let inner = match (&self.inner, &rhs.inner) {
            (MatBacking::Packed(a), MatBacking::Packed(b)) => MatBacking::Packed(a.add(b)),
            (MatBacking::Scalar(a), MatBacking::Scalar(b)) => MatBacking::Scalar(a.sub(b)),
            _ => unreachable!(),
        };
        Ok(FieldMatrix { inner })
    }

    pub fn transpose(&self) -> FieldMatrix {
        let inner = match &self.inner {
            MatBacking::Packed(m) => MatBacking::Packed(m.transpose()),
            MatBacking::Scalar(m) => MatBacking::Scalar(m.transpose()),
        };
        FieldMatrix { inner }
    }

    pub fn kronecker(&self, rhs: &FieldMatrix) -> Result<FieldMatrix, GfError> {
        self.check_same_prime(rhs)?;
        let inner = match (&self.inner, &rhs.inner) {
            (MatBacking::Packed(a), MatBacking::Packed(b)) => MatBacking::Packed(a.kronecker(b)),
            (MatBacking::Scalar(a), MatBacking::Scalar(b)) => MatBacking::Scalar(a.kronecker(b)),
            _ => unreachable!(),
        };
        Ok(FieldMatrix { inner })
    }

    pub fn pow(&self, e: u64) -> Result<FieldMatrix, GfError> {
        if !self.is_square() {
            return Err(GfError::NotSquare(self.nrows(), self.ncols()));
        }
        let inner = match &self.inner {
            MatBacking::Packed(m) => MatBacking::Packed(m.pow(e)),
            MatBacking::Scalar(m) => MatBacking::Scalar(m.pow(e)),
        };
        Ok(FieldMatrix { inner })
    }

    /// Row rank over GF(p).
    pub fn rank(&self) -> usize {
        match &self.inner {
            MatBacking::Packed(m) => m.rank(),
            MatBacking::Scalar(m) => m.rank(),
        }
    }

    /// Basis of the right kernel {x : Mx = 0}; size = ncols − rank.
    pub fn nullspace_basis(&self) -> Vec<FieldVector> {
        match &self.inner {
            MatBacking::Packed(m) => {
                m.right_nullspace().into_iter().map(FieldVector::from_packed).collect()
            }
            MatBacking::Scalar(m) => {
                m.right_nullspace().into_iter().map(FieldVector::from_scalar).collect()
            }
        }
    }

    /// Basis of the left kernel {x : xM = 0}.
    pub fn left_nullspace_basis(&self) -> Vec<FieldVector> {
        match &self.inner {
            MatBacking::Packed(m) => {
                m.left_nullspace().into_iter().map(FieldVector::from_packed).collect()
            }
            MatBacking::Scalar(m) => {
                m.left_nullspace().into_iter().map(FieldVector::from_scalar).collect()
            }
        }
    }

    /// Two-sided inverse of a nonsingular square matrix.
    pub fn mat_inverse(&self) -> Result<FieldMatrix, GfError> {
        if !self.is_square() {
            return Err(GfError::NotSquare(self.nrows(), self.ncols()));
        }
        let inner = match &self.inner {
            MatBacking::Packed(m) => MatBacking::Packed(m.inverse().ok_or(GfError::Singular)?),
            MatBacking::Scalar(m) => MatBacking::Scalar(m.inverse().ok_or(GfError::Singular)?),
        };
        Ok(FieldMatrix { inner })
    }

    /// Signed determinant of the (rows × cols) submatrix.
    pub fn minor_det(&self, rows: &[usize], cols: &[usize]) -> u8 {
        match &self.inner {
            MatBacking::Packed(m) => m.minor_det(rows, cols),
            MatBacking::Scalar(m) => m.minor_det(rows, cols),
        }
    }

    pub fn row_vec(&self, i: usize) -> FieldVector {
        match &self.inner {
            MatBacking::Packed(m) => FieldVector::from_packed(m.row_vec(i)),
            MatBacking::Scalar(m) => FieldVector::from_scalar(m.row_vec(i)),
        }
    }

    /// Stack row vectors into a matrix.
    pub fn from_rows(p: u8, ncols: usize, rows: &[FieldVector]) -> FieldMatrix {
        Self::check_prime(p);
        if p == 2 {
            let packed: Vec<_> = rows
                .iter()
                .map(|v| match &v.inner {
                    VecBacking::Packed(pv) => pv.clone(),
                    VecBacking::Scalar(_) => panic!("mixed vector backings"),
                })
                .collect();
            FieldMatrix::from_packed(PackedMatrix::from_rows(ncols, &packed))
        } else {
            let scal: Vec<_> = rows
                .iter()
                .map(|v| match &v.inner {
                    VecBacking::Scalar(sv) => sv.clone(),
                    VecBacking::Packed(_) => panic!("mixed vector backings"),
                })
                .collect();
            FieldMatrix::from_scalar(ScalarMatrix::from_rows(p, ncols, &scal))
        }
    }

    /// Column action M·v.
    pub fn mul_vec(&self, v: &FieldVector) -> FieldVector {
        match (&self.inner, &v.inner) {
            (MatBacking::Packed(m), VecBacking::Packed(pv)) => {
                FieldVector::from_packed(m.mul_vec(pv))
            }
            (MatBacking::Scalar(m), VecBacking::Scalar(sv)) => {
                FieldVector::from_scalar(m.mul_vec(sv))
            }
            _ => panic!("mixed backings"),
        }
    }

    /// Row action v·M.
    pub fn vec_mul(&self, v: &FieldVector) -> FieldVector {
        match (&self.inner, &v.inner) {
            (MatBacking::Packed(m), VecBacking::Packed(pv)) => {
                FieldVector::from_packed(pv.mul_mat(m))
            }
            (MatBacking::Scalar(m), VecBacking::Scalar(sv)) => {
                FieldVector::from_scalar(sv.mul_mat(m))
            }
            _ => panic!("mixed backings"),
        }
    }

    /// Serialize in the exchange format: header "p nrows ncols", then one
    /// line of space-separated residues per row, LF line endings.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.prime(), self.nrows(), self.ncols());
        for i in 0..self.nrows() {
            let row: Vec<String> = (0..self.ncols()).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse the exchange format. Entries must already be reduced (< p).
    pub fn parse_text(s: &str) -> Result<FieldMatrix, GfError> {
        let mut lines = s.lines();
        let header = lines.next().ok_or_else(|| GfError::Parse("empty input".into()))?;
        let mut parts = header.split_whitespace();
        let mut next_num = |name: &str| -> Result<usize, GfError> {
            parts
                .next()
                .ok_or_else(|| GfError::Parse(format!("missing {name} in header")))?
                .parse::<usize>()
                .map_err(|e| GfError::Parse(format!("bad {name}: {e}")))
        };
        let p = next_num("prime")?;
        let nrows = next_num("nrows")?;
        let ncols = next_num("ncols")?;
        let p: u8 = p
            .try_into()
            .ok()
            .filter(|&p| is_prime(p))
            .ok_or_else(|| GfError::Parse(format!("{p} is not a supported prime")))?;
        let mut m = FieldMatrix::zeros(p, nrows, ncols);
        for i in 0..nrows {
            let line = lines
                .next()
                .ok_or_else(|| GfError::Parse(format!("missing row {} of {nrows}", i + 1)))?;
            let mut count = 0;
            for (j, tok) in line.split_whitespace().enumerate() {
                let v: u8 = tok
                    .parse()
                    .map_err(|e| GfError::Parse(format!("row {}, entry {}: {e}", i + 1, j + 1)))?;
                if v >= p {
                    return Err(GfError::Parse(format!(
                        "row {}, entry {}: {v} is not reduced mod {p}",
                        i + 1,
                        j + 1
                    )));
                }
                if j >= ncols {
                    return Err(GfError::Parse(format!("row {} has more than {ncols} entries", i + 1)));
                }
                m.set(i, j, v);
                count += 1;
            }
            if count != ncols {
                return Err(GfError::Parse(format!(
                    "row {} has {count} entries, expected {ncols}",
                    i + 1
                )));
            }
        }
        Ok(m)
    }
}
