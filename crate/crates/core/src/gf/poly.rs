//! Univariate polynomials over GF(p), lowest-degree-first coefficients.

use super::gf2poly::Gf2Poly;
use super::matrix::FieldMatrix;
use super::scalar::{addm, invm, mulm, subm};
use super::GfError;

/// Polynomial over GF(p). Coefficients are reduced mod p and trailing zeros
/// trimmed, so the zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldPoly {
    p: u8,
    coeffs: Vec<u8>,
}

impl FieldPoly {
    pub fn zero(p: u8) -> Self {
        FieldPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u8) -> Self {
        FieldPoly { p, coeffs: vec![1 % p] }
    }

    pub fn x(p: u8) -> Self {
        FieldPoly { p, coeffs: vec![0, 1] }
    }

    pub fn monomial(p: u8, c: u8, degree: usize) -> Self {
        let c = c % p;
        if c == 0 {
            return Self::zero(p);
        }
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        FieldPoly { p, coeffs }
    }

    /// Build from lowest-first coefficients, reducing mod p and trimming.
    pub fn from_coeffs(p: u8, coeffs: &[u8]) -> Self {
        let mut coeffs: Vec<u8> = coeffs.iter().map(|&c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FieldPoly { p, coeffs }
    }

    pub fn prime(&self) -> u8 {
        self.p
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> u8 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn leading(&self) -> u8 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn add(&self, rhs: &FieldPoly) -> FieldPoly {
        assert_eq!(self.p, rhs.p, "prime mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| addm(self.coeff(k), rhs.coeff(k), self.p)).collect();
        FieldPoly { p: self.p, coeffs }.trim()
    }

    pub fn sub(&self, rhs: &FieldPoly) -> FieldPoly {
        assert_eq!(self.p, rhs.p, "prime mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| subm(self.coeff(k), rhs.coeff(k), self.p)).collect();
        FieldPoly { p: self.p, coeffs }.trim()
    }

    pub fn scale(&self, c: u8) -> FieldPoly {
        let coeffs = self.coeffs.iter().map(|&a| mulm(a, c, self.p)).collect();
        FieldPoly { p: self.p, coeffs }.trim()
    }

    pub fn mul(&self, rhs: &FieldPoly) -> FieldPoly {
        assert_eq!(self.p, rhs.p, "prime mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.p);
        }
        // Large GF(2) products go through the packed kernel.
        if self.p == 2 && self.coeffs.len().min(rhs.coeffs.len()) > 256 {
            return Gf2Poly::from_field(self).mul(&Gf2Poly::from_field(rhs)).to_field();
        }
        let p32 = u32::from(self.p);
        let mut acc = vec![0u32; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let slot = &mut acc[i + j];
                *slot = (*slot + u32::from(a) * u32::from(b)) % p32;
            }
        }
        let coeffs = acc.into_iter().map(|x| x as u8).collect();
        FieldPoly { p: self.p, coeffs }.trim()
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divrem(&self, div: &FieldPoly) -> Result<(FieldPoly, FieldPoly), GfError> {
        assert_eq!(self.p, div.p, "prime mismatch");
        if div.is_zero() {
            return Err(GfError::ZeroPolynomial);
        }
        let d = div.degree().unwrap();
        let Some(n) = self.degree() else {
            return Ok((Self::zero(self.p), Self::zero(self.p)));
        };
        if n < d {
            return Ok((Self::zero(self.p), self.clone()));
        }
        let p = self.p;
        let lead_inv = invm(div.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u8; n - d + 1];
        for k in (d..=n).rev() {
            let c = mulm(rem[k], lead_inv, p);
            if c == 0 {
                continue;
            }
            quot[k - d] = c;
            for (t, &dc) in div.coeffs.iter().enumerate() {
                rem[k - d + t] = subm(rem[k - d + t], mulm(c, dc, p), p);
            }
        }
        rem.truncate(d);
        Ok((FieldPoly { p, coeffs: quot }.trim(), FieldPoly { p, coeffs: rem }.trim()))
    }

    pub fn rem(&self, div: &FieldPoly) -> Result<FieldPoly, GfError> {
        if self.p == 2 && self.coeffs.len() > 512 {
            if div.is_zero() {
                return Err(GfError::ZeroPolynomial);
            }
            return Ok(Gf2Poly::from_field(self).rem(&Gf2Poly::from_field(div)).to_field());
        }
        Ok(self.divrem(div)?.1)
    }

    pub fn div_exact(&self, div: &FieldPoly) -> Result<FieldPoly, GfError> {
        let (q, r) = self.divrem(div)?;
        assert!(r.is_zero(), "division was not exact");
        Ok(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &FieldPoly) -> FieldPoly {
        assert_eq!(self.p, rhs.p, "prime mismatch");
        if self.p == 2 && self.coeffs.len().max(rhs.coeffs.len()) > 512 {
            return Gf2Poly::from_field(self).gcd(&Gf2Poly::from_field(rhs)).to_field();
        }
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn make_monic(&self) -> FieldPoly {
        let lead = self.leading();
        if lead == 0 || lead == 1 {
            return self.clone();
        }
        self.scale(invm(lead, self.p))
    }

    pub fn derivative(&self) -> FieldPoly {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.p);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| mulm((k as u64 % u64::from(self.p)) as u8, c, self.p))
            .collect::<Vec<_>>();
        FieldPoly { p: self.p, coeffs }.trim()
    }

    /// Horner evaluation at a square matrix over the same prime.
    pub fn eval_matrix(&self, m: &FieldMatrix) -> Result<FieldMatrix, GfError> {
        if !m.is_square() {
            return Err(GfError::NotSquare(m.nrows(), m.ncols()));
        }
        if m.prime() != self.p {
            return Err(GfError::PrimeMismatch(self.p, m.prime()));
        }
        let n = m.nrows();
        let mut acc = FieldMatrix::zeros(self.p, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mat_mul(m)?;
            if c != 0 {
                let mut ci = FieldMatrix::zeros(self.p, n, n);
                for i in 0..n {
                    ci.set(i, i, c);
                }
                acc = acc.add(&ci)?;
            }
        }
        Ok(acc)
    }

    /// Scalar evaluation mod p.
    pub fn eval_scalar(&self, x: u8) -> u8 {
        let mut acc = 0u8;
        for &c in self.coeffs.iter().rev() {
            acc = addm(mulm(acc, x, self.p), c, self.p);
        }
        acc
    }
}

impl std::fmt::Debug for FieldPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (k, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (k, 1) => format!("x^{k}"),
                (k, c) => format!("{c}x^{k}"),
            };
            terms.push(t);
        }
        write!(f, "{}", terms.join(" + "))
    }
}
