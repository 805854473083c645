//! Bit-packed GF(2) polynomials: coefficient k lives at bit k.
//!
//! Internal workhorse for characteristic-polynomial products and the
//! distinct-degree stages of factorization, where degrees reach the module
//! dimension (tens of thousands). Word-parallel XOR keeps those loops cheap.

use super::poly::FieldPoly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Gf2Poly {
    /// Packed coefficients, lowest word first; no trailing zero words.
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }



    pub fn from_field(f: &FieldPoly) -> Self {
        assert_eq!(f.prime(), 2, "packed polynomials are GF(2) only");
        let coeffs = f.coeffs();
        let mut words = vec![0u64; coeffs.len().div_ceil(64)];
        for (k, &c) in coeffs.iter().enumerate() {
            if c & 1 == 1 {
                words[k / 64] |= 1 << (k % 64);
            }
        }
        let mut p = Gf2Poly { words };
        p.trim();
        p
    }

    pub fn to_field(&self) -> FieldPoly {
        let n = match self.degree() {
            None => return FieldPoly::zero(2),
            Some(d) => d + 1,
        };
        let mut coeffs = vec![0u8; n];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = ((self.words[k / 64] >> (k % 64)) & 1) as u8;
        }
        FieldPoly::from_coeffs(2, &coeffs)
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + (63 - last.leading_zeros() as usize))
    }


    /// self ← self + rhs·x^shift
    fn xor_shifted(&mut self, rhs: &Gf2Poly, shift: usize) {
        let wo = shift / 64;
        let bo = shift % 64;
        let need = wo + rhs.words.len() + usize::from(bo > 0);
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        if bo == 0 {
            for (k, &s) in rhs.words.iter().enumerate() {
                self.words[wo + k] ^= s;
            }
        } else {
            for (k, &s) in rhs.words.iter().enumerate() {
                self.words[wo + k] ^= s << bo;
                self.words[wo + k + 1] ^= s >> (64 - bo);
            }
        }
        self.trim();
    }


    pub fn mul(&self, rhs: &Gf2Poly) -> Gf2Poly {
        if self.is_zero() || rhs.is_zero() {
            return Gf2Poly::zero();
        }
        // Iterate over set bits of the sparser operand.
        let (bits, other) = if self.words.len() <= rhs.words.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Gf2Poly::zero();
        for (wi, &word) in bits.words.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let k = wi * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                out.xor_shifted(other, k);
            }
        }
        out
    }

    /// Square by spreading each bit to the even positions.
    pub fn square(&self) -> Gf2Poly {
        fn spread(half: u32) -> u64 {
            let mut x = u64::from(half);
            x = (x | (x << 16)) & 0x0000_ffff_0000_ffff;
            x = (x | (x << 8)) & 0x00ff_00ff_00ff_00ff;
            x = (x | (x << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
            x = (x | (x << 2)) & 0x3333_3333_3333_3333;
            x = (x | (x << 1)) & 0x5555_5555_5555_5555;
            x
        }
        let mut words = Vec::with_capacity(self.words.len() * 2);
        for &w in &self.words {
            words.push(spread(w as u32));
            words.push(spread((w >> 32) as u32));
        }
        let mut out = Gf2Poly { words };
        out.trim();
        out
    }

    /// Remainder of self by a nonzero divisor.
    pub fn rem(&self, div: &Gf2Poly) -> Gf2Poly {
        let d = div.degree().expect("division by zero polynomial");
        let mut r = self.clone();
        while let Some(n) = r.degree() {
            if n < d {
                break;
            }
            r.xor_shifted(div, n - d);
        }
        r
    }

    pub fn gcd(&self, rhs: &Gf2Poly) -> Gf2Poly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }


    pub fn square_mod(&self, modulus: &Gf2Poly) -> Gf2Poly {
        self.square().rem(modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(coeffs: &[u8]) -> FieldPoly {
        FieldPoly::from_coeffs(2, coeffs)
    }

    #[test]
    fn round_trip_and_degree() {
        let f = fp(&[1, 0, 1, 1]); // x³+x²+1
        let g = Gf2Poly::from_field(&f);
        assert_eq!(g.degree(), Some(3));
        assert_eq!(g.to_field(), f);
        assert_eq!(Gf2Poly::zero().degree(), None);
    }

    #[test]
    fn mul_matches_field_path() {
        let a = fp(&[1, 1, 0, 1]);
        let b = fp(&[0, 1, 1]);
        let packed = Gf2Poly::from_field(&a).mul(&Gf2Poly::from_field(&b)).to_field();
        assert_eq!(packed, a.mul(&b));
    }

    #[test]
    fn square_is_mul_self() {
        let a = fp(&[1, 1, 1, 0, 1, 0, 0, 1]);
        let g = Gf2Poly::from_field(&a);
        assert_eq!(g.square(), g.mul(&g));
    }

    #[test]
    fn rem_and_gcd() {
        // (x+1)² mod (x+1) = 0; gcd((x+1)², x²+x) = x+1... over GF(2).
        let sq = Gf2Poly::from_field(&fp(&[1, 0, 1]));
        let lin = Gf2Poly::from_field(&fp(&[1, 1]));
        assert!(sq.rem(&lin).is_zero());
        let other = Gf2Poly::from_field(&fp(&[0, 1, 1])); // x² + x
        assert_eq!(sq.gcd(&other).to_field(), fp(&[1, 1]));
    }
}
