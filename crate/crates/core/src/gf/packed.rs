//! Bit-packed dense matrices over GF(2).
//!
//! Rows are stored as contiguous `u64` words, least significant bit first:
//! column `j` of a row lives in word `j / 64` at bit `j % 64`. All unused
//! tail bits of the last word in each row are kept at zero, which lets
//! whole-row operations work word-at-a-time without masking.

/// Dense GF(2) matrix with `u64`-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct PackedMatrix {
    nrows: usize,
    ncols: usize,
    /// Words per row.
    w: usize,
    data: Vec<u64>,
}

/// XOR `src` into `dst` (equal lengths).
#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    debug_assert_eq!(dst.len(), src.len());
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// XOR `src` into `dst` starting at bit `offset`. Bits of `src` beyond
/// `dst`'s end must be zero.
fn xor_shifted(dst: &mut [u64], src: &[u64], offset: usize) {
    let wo = offset / 64;
    let bo = offset % 64;
    if bo == 0 {
        for (k, &s) in src.iter().enumerate() {
            dst[wo + k] ^= s;
        }
    } else {
        for (k, &s) in src.iter().enumerate() {
            dst[wo + k] ^= s << bo;
            let carry = s >> (64 - bo);
            if wo + k + 1 < dst.len() {
                dst[wo + k + 1] ^= carry;
            } else {
                debug_assert_eq!(carry, 0);
            }
        }
    }
}

impl PackedMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        let w = ncols.div_ceil(64).max(1);
        PackedMatrix { nrows, ncols, w, data: vec![0; nrows * w] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from row-major entries; any odd value becomes 1.
    pub fn from_entries(nrows: usize, ncols: usize, entries: &[u8]) -> Self {
        assert_eq!(entries.len(), nrows * ncols, "entry count mismatch");
        let mut m = Self::zeros(nrows, ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                m.set(i, j, entries[i * ncols + j] & 1);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }


    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.w..(i + 1) * self.w]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.w..(i + 1) * self.w]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        debug_assert!(i < self.nrows && j < self.ncols);
        ((self.data[i * self.w + j / 64] >> (j % 64)) & 1) as u8
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        debug_assert!(i < self.nrows && j < self.ncols);
        let word = &mut self.data[i * self.w + j / 64];
        let bit = 1u64 << (j % 64);
        if v & 1 == 1 {
            *word |= bit;
        } else {
            *word &= !bit;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        if self.nrows != self.ncols {
            return false;
        }
        // Each row must consist of exactly the diagonal bit.
        (0..self.nrows).all(|i| {
            self.row(i).iter().enumerate().all(|(k, &word)| {
                let expect = if k == i / 64 { 1u64 << (i % 64) } else { 0 };
                word == expect
            })
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.w;
        let (a0, b0) = (a * w, b * w);
        for k in 0..w {
            self.data.swap(a0 + k, b0 + k);
        }
    }

    /// XOR row `src` into row `dst`.
    fn xor_rows(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let w = self.w;
        let (d0, s0) = (dst * w, src * w);
        if d0 < s0 {
            let (lo, hi) = self.data.split_at_mut(s0);
            xor_into(&mut lo[d0..d0 + w], &hi[..w]);
        } else {
            let (lo, hi) = self.data.split_at_mut(d0);
            xor_into(&mut hi[..w], &lo[s0..s0 + w]);
        }
    }

    /// Extract up to 8 bits of row `i` starting at column `bitpos`.
    #[inline]
    fn byte_at(&self, i: usize, bitpos: usize, nbits: usize) -> usize {
        let row = self.row(i);
        let wi = bitpos / 64;
        let off = bitpos % 64;
        let mut x = row[wi] >> off;
        if off > 0 && wi + 1 < row.len() {
            x |= row[wi + 1] << (64 - off);
        }
        (x as usize) & ((1usize << nbits) - 1)
    }

    /// Matrix product; picks the blocked path for large operands.
    pub fn mul(&self, rhs: &PackedMatrix) -> PackedMatrix {
        assert_eq!(self.ncols, rhs.nrows, "inner dimension mismatch");
        if self.nrows < 64 || rhs.nrows < 64 || rhs.ncols < 64 {
            return self.mul_naive(rhs);
        }
        self.mul_m4r(rhs)
    }

    /// Reference product: per set bit of the left operand, XOR a row of the
    /// right operand. Kept as the bit-exact oracle for the blocked path.
    pub fn mul_naive(&self, rhs: &PackedMatrix) -> PackedMatrix {
        assert_eq!(self.ncols, rhs.nrows, "inner dimension mismatch");
        let mut out = PackedMatrix::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            let left = self.row(i);
            let dst = &mut out.data[i * out.w..(i + 1) * out.w];
            for (wi, &word) in left.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let j = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    xor_into(dst, rhs.row(j));
                }
            }
        }
        out
    }

    /// "Four Russians" product: precompute all XOR combinations of each
    /// 8-row block of `rhs`, then combine per 8-bit slice of the left rows.
    fn mul_m4r(&self, rhs: &PackedMatrix) -> PackedMatrix {
        let mut out = PackedMatrix::zeros(self.nrows, rhs.ncols);
        let w = rhs.w;
        let mut table = vec![0u64; 256 * w];
        let nchunks = self.ncols.div_ceil(8);
        for chunk in 0..nchunks {
            let base = chunk * 8;
            let nbits = (self.ncols - base).min(8);
            let size = 1usize << nbits;
            table[..w].fill(0);
            for idx in 1..size {
                let t = idx.trailing_zeros() as usize;
                let prev = idx & (idx - 1);
                let (lo, hi) = table.split_at_mut(idx * w);
                let src = &lo[prev * w..prev * w + w];
                let dst = &mut hi[..w];
                let r = rhs.row(base + t);
                for k in 0..w {
                    dst[k] = src[k] ^ r[k];
                }
            }
            for i in 0..self.nrows {
                let idx = self.byte_at(i, base, nbits);
                if idx != 0 {
                    let dst = &mut out.data[i * w..(i + 1) * w];
                    xor_into(dst, &table[idx * w..idx * w + w]);
                }
            }
        }
        out
    }

    /// XOR sum (matrix addition over GF(2)).
    pub fn add(&self, rhs: &PackedMatrix) -> PackedMatrix {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols), "shape mismatch");
        let mut out = self.clone();
        xor_into(&mut out.data, &rhs.data);
        out
    }

    pub fn transpose(&self) -> PackedMatrix {
        let mut out = PackedMatrix::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for (wi, &word) in self.row(i).iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let j = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    out.set(j, i, 1);
                }
            }
        }
        out
    }

    pub fn kronecker(&self, rhs: &PackedMatrix) -> PackedMatrix {
        let mut out = PackedMatrix::zeros(self.nrows * rhs.nrows, self.ncols * rhs.ncols);
        for i1 in 0..self.nrows {
            for (wi, &word) in self.row(i1).iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let j1 = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for i2 in 0..rhs.nrows {
                        let dst_row = i1 * rhs.nrows + i2;
                        let dst = &mut out.data[dst_row * out.w..(dst_row + 1) * out.w];
                        xor_shifted(dst, rhs.row(i2), j1 * rhs.ncols);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u64) -> PackedMatrix {
        assert_eq!(self.nrows, self.ncols, "pow needs a square matrix");
        let mut acc = PackedMatrix::identity(self.nrows);
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

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.ncols {
            if r == self.nrows {
                break;
            }
            let wi = col / 64;
            let bit = 1u64 << (col % 64);
            let Some(pr) = (r..self.nrows).find(|&i| self.data[i * self.w + wi] & bit != 0)
            else {
                continue;
            };
            self.swap_rows(r, pr);
            for i in 0..self.nrows {
                if i != r && self.data[i * self.w + wi] & bit != 0 {
                    self.xor_rows(i, r);
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

    /// Basis of the right kernel {x : Mx = 0}, one vector per free column,
    /// in ascending free-column order.
    pub fn right_nullspace(&self) -> Vec<PackedVec> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.ncols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.ncols - pivots.len());
        for (j, _) in is_pivot.iter().enumerate().filter(|(_, &piv)| !piv) {
            let mut v = PackedVec::zeros(self.ncols);
            v.set(j, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                if m.get(r, j) == 1 {
                    v.set(pc, 1);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the left kernel {x : xM = 0}.
    pub fn left_nullspace(&self) -> Vec<PackedVec> {
        self.transpose().right_nullspace()
    }

    pub fn inverse(&self) -> Option<PackedMatrix> {
        assert_eq!(self.nrows, self.ncols, "inverse needs a square matrix");
        let n = self.nrows;
        let mut aug = PackedMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for (wi, &word) in self.row(i).iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let j = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    aug.set(i, j, 1);
                }
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| k != c) {
            return None;
        }
        let mut inv = PackedMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Determinant of the square submatrix with the given rows and columns.
    /// Index lists must be strictly increasing and equal length ≤ 64.
    pub fn minor_det(&self, rows: &[usize], cols: &[usize]) -> u8 {
        assert_eq!(rows.len(), cols.len(), "minor must be square");
        assert!(rows.len() <= 64, "minor larger than 64 unsupported");
        let k = rows.len();
        let mut mini: Vec<u64> = Vec::with_capacity(k);
        for &r in rows {
            let mut word = 0u64;
            for (t, &c) in cols.iter().enumerate() {
                word |= u64::from(self.get(r, c)) << t;
            }
            mini.push(word);
        }
        // Elimination on single-word rows; determinant is 1 iff full rank.
        // Each round either finds a pivot or exits, so the pivot row
        // index always equals the current column.
        for col in 0..k {
            let bit = 1u64 << col;
            let Some(pr) = (col..k).find(|&i| mini[i] & bit != 0) else {
                return 0;
            };
            mini.swap(col, pr);
            for i in 0..k {
                if i != col && mini[i] & bit != 0 {
                    mini[i] ^= mini[col];
                }
            }
        }
        1
    }

    pub fn row_vec(&self, i: usize) -> PackedVec {
        PackedVec { len: self.ncols, words: self.row(i).to_vec() }
    }

    pub fn from_rows(ncols: usize, rows: &[PackedVec]) -> Self {
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "row length mismatch");
            m.row_mut(i).copy_from_slice(&r.words);
        }
        m
    }

    /// Column action M·v.
    pub fn mul_vec(&self, v: &PackedVec) -> PackedVec {
        assert_eq!(self.ncols, v.len(), "shape mismatch");
        let mut out = PackedVec::zeros(self.nrows);
        for i in 0..self.nrows {
            let mut acc = 0u64;
            for (a, b) in self.row(i).iter().zip(&v.words) {
                acc ^= a & b;
            }
            out.set(i, (acc.count_ones() & 1) as u8);
        }
        out
    }
}

impl std::fmt::Debug for PackedMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "PackedMatrix {}x{} [", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            let row: String =
                (0..self.ncols).map(|j| if self.get(i, j) == 1 { '1' } else { '0' }).collect();
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

/// Bit-packed GF(2) row vector.
#[derive(Clone, PartialEq, Eq)]
pub struct PackedVec {
    len: usize,
    words: Vec<u64>,
}

impl PackedVec {
    pub fn zeros(len: usize) -> Self {
        PackedVec { len, words: vec![0; len.div_ceil(64).max(1)] }
    }


    pub fn len(&self) -> usize {
        self.len
    }


    #[inline]
    pub fn get(&self, j: usize) -> u8 {
        debug_assert!(j < self.len);
        ((self.words[j / 64] >> (j % 64)) & 1) as u8
    }

    #[inline]
    pub fn set(&mut self, j: usize, v: u8) {
        debug_assert!(j < self.len);
        let word = &mut self.words[j / 64];
        let bit = 1u64 << (j % 64);
        if v & 1 == 1 {
            *word |= bit;
        } else {
            *word &= !bit;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&x| x == 0)
    }

    pub fn first_set(&self) -> Option<usize> {
        for (wi, &word) in self.words.iter().enumerate() {
            if word != 0 {
                return Some(wi * 64 + word.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn xor_assign(&mut self, rhs: &PackedVec) {
        debug_assert_eq!(self.len, rhs.len);
        xor_into(&mut self.words, &rhs.words);
    }

    /// Parity of the bitwise AND (the standard dot product over GF(2)).
    pub fn dot(&self, rhs: &PackedVec) -> u8 {
        debug_assert_eq!(self.len, rhs.len);
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&rhs.words) {
            acc ^= a & b;
        }
        (acc.count_ones() & 1) as u8
    }

    /// Row action v·M.
    pub fn mul_mat(&self, m: &PackedMatrix) -> PackedVec {
        assert_eq!(self.len, m.nrows(), "shape mismatch");
        let mut out = PackedVec::zeros(m.ncols());
        for (wi, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let j = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                xor_into(&mut out.words, m.row(j));
            }
        }
        out
    }
}

impl std::fmt::Debug for PackedVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: String = (0..self.len).map(|j| if self.get(j) == 1 { '1' } else { '0' }).collect();
        write!(f, "PackedVec[{s}]")
    }
}
