//! Dense matrices over GF(p) for any prime p < 2⁸, one byte per entry.
//!
//! This is the reference backing: for p = 2 it must agree bit-for-bit with
//! the packed kernels, and it is the only path for odd primes. Entries are
//! kept fully reduced mod p at all times.

#[inline]
pub(crate) fn addm(a: u8, b: u8, p: u8) -> u8 {
    ((u16::from(a) + u16::from(b)) % u16::from(p)) as u8
}

#[inline]
pub(crate) fn subm(a: u8, b: u8, p: u8) -> u8 {
    ((u16::from(a) + u16::from(p) - u16::from(b)) % u16::from(p)) as u8
}

#[inline]
pub(crate) fn mulm(a: u8, b: u8, p: u8) -> u8 {
    ((u16::from(a) * u16::from(b)) % u16::from(p)) as u8
}

pub(crate) fn powm(mut a: u8, mut e: u64, p: u8) -> u8 {
    let mut acc = 1u8;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

/// Multiplicative inverse mod prime p (Fermat); a must be nonzero mod p.
#[inline]
pub(crate) fn invm(a: u8, p: u8) -> u8 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    powm(a, u64::from(p) - 2, p)
}

/// Dense GF(p) matrix, row-major bytes.
#[derive(Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    p: u8,
    nrows: usize,
    ncols: usize,
    data: Vec<u8>,
}

impl ScalarMatrix {
    pub fn zeros(p: u8, nrows: usize, ncols: usize) -> Self {
        ScalarMatrix { p, nrows, ncols, data: vec![0; nrows * ncols] }
    }

    pub fn identity(p: u8, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Build from row-major entries, reducing each mod p.
    pub fn from_entries(p: u8, nrows: usize, ncols: usize, entries: &[u8]) -> Self {
        assert_eq!(entries.len(), nrows * ncols, "entry count mismatch");
        let data = entries.iter().map(|&x| x % p).collect();
        ScalarMatrix { p, nrows, ncols, data }
    }

    pub fn prime(&self) -> u8 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        debug_assert!(i < self.nrows && j < self.ncols);
        self.data[i * self.ncols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        debug_assert!(i < self.nrows && j < self.ncols);
        self.data[i * self.ncols + j] = v % self.p;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols && *self == Self::identity(self.p, self.nrows)
    }

    pub fn mul(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.ncols, rhs.nrows, "inner dimension mismatch");
        assert_eq!(self.p, rhs.p, "prime mismatch");
        let p = u32::from(self.p);
        let mut out = ScalarMatrix::zeros(self.p, self.nrows, rhs.ncols);
        let mut buf = vec![0u32; rhs.ncols];
        for i in 0..self.nrows {
            buf.fill(0);
            for k in 0..self.ncols {
                let c = u32::from(self.get(i, k));
                if c != 0 {
                    let rrow = rhs.row(k);
                    for (acc, &b) in buf.iter_mut().zip(rrow) {
                        *acc += c * u32::from(b);
                    }
                }
            }
            let orow = &mut out.data[i * rhs.ncols..(i + 1) * rhs.ncols];
            for (o, &acc) in orow.iter_mut().zip(&buf) {
                *o = (acc % p) as u8;
            }
        }
        out
    }

    pub fn add(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols), "shape mismatch");
        assert_eq!(self.p, rhs.p, "prime mismatch");
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(&rhs.data) {
            *o = addm(*o, b, self.p);
        }
        out
    }

    pub fn sub(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols), "shape mismatch");
        assert_eq!(self.p, rhs.p, "prime mismatch");
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(&rhs.data) {
            *o = subm(*o, b, self.p);
        }
        out
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut out = ScalarMatrix::zeros(self.p, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.data[j * self.nrows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn kronecker(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.p, rhs.p, "prime mismatch");
        let (q, r) = (rhs.nrows, rhs.ncols);
        let mut out = ScalarMatrix::zeros(self.p, self.nrows * q, self.ncols * r);
        for i1 in 0..self.nrows {
            for j1 in 0..self.ncols {
                let a = self.get(i1, j1);
                if a == 0 {
                    continue;
                }
                for i2 in 0..q {
                    for j2 in 0..r {
                        let v = mulm(a, rhs.get(i2, j2), self.p);
                        out.data[(i1 * q + i2) * self.ncols * r + (j1 * r + j2)] = v;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u64) -> ScalarMatrix {
        assert_eq!(self.nrows, self.ncols, "pow needs a square matrix");
        let mut acc = ScalarMatrix::identity(self.p, self.nrows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn scaled_row_sub(&mut self, dst: usize, src: usize, c: u8) {
        let p = self.p;
        let n = self.ncols;
        let (d0, s0) = (dst * n, src * n);
        if c == 0 {
            return;
        }
        for k in 0..n {
            let s = self.data[s0 + k];
            let d = &mut self.data[d0 + k];
            *d = subm(*d, mulm(c, s, p), p);
        }
    }

    /// In-place reduced row echelon form (pivots normalized to 1); returns
    /// pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.ncols {
            if r == self.nrows {
                break;
            }
            let Some(pr) = (r..self.nrows).find(|&i| self.get(i, col) != 0) else {
                continue;
            };
            for k in 0..self.ncols {
                self.data.swap(r * self.ncols + k, pr * self.ncols + k);
            }
            let inv = invm(self.get(r, col), p);
            if inv != 1 {
                for k in 0..self.ncols {
                    let v = &mut self.data[r * self.ncols + k];
                    *v = mulm(*v, inv, p);
                }
            }
            for i in 0..self.nrows {
                if i != r {
                    let c = self.get(i, col);
                    self.scaled_row_sub(i, r, c);
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis of the right kernel, one vector per free column, ascending.
    pub fn right_nullspace(&self) -> Vec<ScalarVec> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.ncols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.ncols - pivots.len());
        for (j, _) in is_pivot.iter().enumerate().filter(|(_, &piv)| !piv) {
            let mut v = ScalarVec::zeros(self.p, self.ncols);
            v.set(j, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                let c = m.get(r, j);
                if c != 0 {
                    v.set(pc, subm(0, c, self.p));
                }
            }
            basis.push(v);
        }
        basis
    }

    pub fn left_nullspace(&self) -> Vec<ScalarVec> {
        self.transpose().right_nullspace()
    }

    pub fn inverse(&self) -> Option<ScalarMatrix> {
        assert_eq!(self.nrows, self.ncols, "inverse needs a square matrix");
        let n = self.nrows;
        let mut aug = ScalarMatrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| k != c) {
            return None;
        }
        let mut inv = ScalarMatrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = aug.get(i, n + j);
            }
        }
        Some(inv)
    }

    /// Determinant of the submatrix with the given rows and columns
    /// (true signed determinant, reduced mod p).
    pub fn minor_det(&self, rows: &[usize], cols: &[usize]) -> u8 {
        assert_eq!(rows.len(), cols.len(), "minor must be square");
        let k = rows.len();
        let p = self.p;
        let mut mini = vec![0u8; k * k];
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                mini[a * k + b] = self.get(r, c);
            }
        }
        let mut det = 1 % p;
        for col in 0..k {
            let Some(pr) = (col..k).find(|&i| mini[i * k + col] != 0) else {
                return 0;
            };
            if pr != col {
                for t in 0..k {
                    mini.swap(col * k + t, pr * k + t);
                }
                det = subm(0, det, p);
            }
            let pv = mini[col * k + col];
            det = mulm(det, pv, p);
            let inv = invm(pv, p);
            for i in (col + 1)..k {
                let c = mulm(mini[i * k + col], inv, p);
                if c != 0 {
                    for t in col..k {
                        let s = mini[col * k + t];
                        let d = &mut mini[i * k + t];
                        *d = subm(*d, mulm(c, s, p), p);
                    }
                }
            }
        }
        det
    }

    pub fn row_vec(&self, i: usize) -> ScalarVec {
        ScalarVec { p: self.p, data: self.row(i).to_vec() }
    }

    pub fn from_rows(p: u8, ncols: usize, rows: &[ScalarVec]) -> Self {
        let mut m = Self::zeros(p, rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "row length mismatch");
            assert_eq!(r.p, p, "prime mismatch");
            m.data[i * ncols..(i + 1) * ncols].copy_from_slice(&r.data);
        }
        m
    }

    /// Column action M·v.
    pub fn mul_vec(&self, v: &ScalarVec) -> ScalarVec {
        assert_eq!(self.ncols, v.len(), "shape mismatch");
        let p = u32::from(self.p);
        let mut out = ScalarVec::zeros(self.p, self.nrows);
        for i in 0..self.nrows {
            let mut acc = 0u32;
            for (&a, &b) in self.row(i).iter().zip(&v.data) {
                acc += u32::from(a) * u32::from(b);
            }
            out.data[i] = (acc % p) as u8;
        }
        out
    }
}

impl std::fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ScalarMatrix(p={}) {}x{} [", self.p, self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// GF(p) vector, one byte per entry.
#[derive(Clone, PartialEq, Eq)]
pub struct ScalarVec {
    p: u8,
    data: Vec<u8>,
}

impl ScalarVec {
    pub fn zeros(p: u8, len: usize) -> Self {
        ScalarVec { p, data: vec![0; len] }
    }


    pub fn prime(&self) -> u8 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }


    #[inline]
    pub fn get(&self, j: usize) -> u8 {
        self.data[j]
    }

    #[inline]
    pub fn set(&mut self, j: usize, v: u8) {
        self.data[j] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.data.iter().position(|&x| x != 0)
    }

    /// self ← self − c·rhs
    pub fn sub_scaled(&mut self, rhs: &ScalarVec, c: u8) {
        debug_assert_eq!(self.len(), rhs.len());
        if c == 0 {
            return;
        }
        let p = self.p;
        for (d, &s) in self.data.iter_mut().zip(&rhs.data) {
            *d = subm(*d, mulm(c, s, p), p);
        }
    }

    pub fn scale(&mut self, c: u8) {
        let p = self.p;
        for d in self.data.iter_mut() {
            *d = mulm(*d, c, p);
        }
    }

    pub fn dot(&self, rhs: &ScalarVec) -> u8 {
        debug_assert_eq!(self.len(), rhs.len());
        let p = u32::from(self.p);
        let mut acc = 0u32;
        for (&a, &b) in self.data.iter().zip(&rhs.data) {
            acc += u32::from(a) * u32::from(b);
        }
        (acc % p) as u8
    }

    /// Row action v·M.
    pub fn mul_mat(&self, m: &ScalarMatrix) -> ScalarVec {
        assert_eq!(self.len(), m.nrows(), "shape mismatch");
        let p = u32::from(self.p);
        let mut acc = vec![0u32; m.ncols()];
        for (i, &c) in self.data.iter().enumerate() {
            if c != 0 {
                for (a, &b) in acc.iter_mut().zip(m.row(i)) {
                    *a += u32::from(c) * u32::from(b);
                }
            }
        }
        ScalarVec { p: self.p, data: acc.into_iter().map(|x| (x % p) as u8).collect() }
    }
}

impl std::fmt::Debug for ScalarVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ScalarVec(p={}){:?}", self.p, self.data)
    }
}
