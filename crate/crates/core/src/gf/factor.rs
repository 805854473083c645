//! Complete factorization over GF(p): squarefree split, distinct-degree
//! split, then randomized equal-degree split (Cantor–Zassenhaus; trace maps
//! in characteristic 2). The GF(2) inner loops ride the packed kernel.

use rand::Rng;

use super::gf2poly::Gf2Poly;
use super::poly::FieldPoly;
use super::GfError;

/// p-th root of a polynomial whose derivative vanishes (all exponents are
/// multiples of p). Over the prime field a^(1/p) = a, so only exponents move.
fn pth_root(f: &FieldPoly) -> FieldPoly {
    let p = f.prime();
    let deg = f.degree().expect("p-th root of zero");
    let step = usize::from(p);
    debug_assert_eq!(deg % step, 0);
    let coeffs: Vec<u8> = (0..=deg / step).map(|k| f.coeff(k * step)).collect();
    FieldPoly::from_coeffs(p, &coeffs)
}

/// Characteristic-aware squarefree decomposition of a monic polynomial:
/// list of (monic squarefree part, multiplicity), multiplicities distinct.
fn squarefree_parts(f: &FieldPoly) -> Vec<(FieldPoly, usize)> {
    let p = f.prime();
    let mut out: Vec<(FieldPoly, usize)> = Vec::new();
    if f.degree().is_none_or(|d| d == 0) {
        return out;
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = g(x^p): recurse on the p-th root with multiplicities scaled.
        for (part, mult) in squarefree_parts(&pth_root(f)) {
            out.push((part, mult * usize::from(p)));
        }
        return out;
    }
    let mut c = f.gcd(&deriv);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1usize;
    while w.degree().is_some_and(|d| d > 0) {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).expect("gcd divides");
        if z.degree().is_some_and(|d| d > 0) {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
    }
    if c.degree().is_some_and(|d| d > 0) {
        // Residual factors with multiplicity divisible by p.
        for (part, mult) in squarefree_parts(&pth_root(&c)) {
            out.push((part, mult * usize::from(p)));
        }
    }
    out
}

/// One Frobenius step t ↦ t^p mod f.
fn frobenius_step(t: &FieldPoly, f: &FieldPoly) -> FieldPoly {
    let p = t.prime();
    if p == 2 {
        if f.degree().is_some_and(|d| d > 64) {
            return Gf2Poly::from_field(t).square_mod(&Gf2Poly::from_field(f)).to_field();
        }
        return t.mul(t).rem(f).expect("nonzero modulus");
    }
    let mut acc = FieldPoly::one(p);
    let mut base = t.clone();
    let mut e = u32::from(p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base).rem(f).expect("nonzero modulus");
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base).rem(f).expect("nonzero modulus");
        }
    }
    acc
}

/// Distinct-degree decomposition of a monic squarefree polynomial: pairs of
/// (product of all irreducible factors of degree d, d). With `cap = Some(c)`
/// the scan stops after degree c and the unsplit remainder comes back too.
fn distinct_degree(f: &FieldPoly, cap: Option<usize>) -> (Vec<(FieldPoly, usize)>, FieldPoly) {
    let p = f.prime();
    let mut parts = Vec::new();
    let mut fstar = f.clone();
    let mut t = FieldPoly::x(p); // x^{p^d} mod f, advanced each round
    let x = FieldPoly::x(p);
    let mut d = 0usize;
    while let Some(rem_deg) = fstar.degree().filter(|&r| r > 0) {
        if 2 * (d + 1) > rem_deg {
            // Whatever remains is a single irreducible factor.
            parts.push((fstar.clone(), rem_deg));
            fstar = FieldPoly::one(p);
            break;
        }
        if cap.is_some_and(|c| d + 1 > c) {
            break;
        }
        d += 1;
        t = frobenius_step(&t, f);
        let g = fstar.gcd(&t.sub(&x));
        if g.degree().is_some_and(|gd| gd > 0) {
            parts.push((g.clone(), d));
            fstar = fstar.div_exact(&g).expect("gcd divides");
        }
    }
    (parts, fstar)
}

/// Split a product of distinct irreducibles of equal degree d into its
/// factors (Cantor–Zassenhaus; trace maps for p = 2).
fn equal_degree(f: &FieldPoly, d: usize, rng: &mut impl Rng) -> Result<Vec<FieldPoly>, GfError> {
    let p = f.prime();
    let deg = f.degree().expect("nonzero");
    if deg == d {
        return Ok(vec![f.make_monic()]);
    }
    let odd_exponent: Option<u128> = if p == 2 {
        None
    } else {
        let mut e: u128 = 1;
        for _ in 0..d {
            e = e
                .checked_mul(u128::from(p))
                .ok_or(GfError::SplitDegree { p, degree: d })?;
        }
        Some((e - 1) / 2)
    };
    for _ in 0..1000 {
        let coeffs: Vec<u8> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
        let r = FieldPoly::from_coeffs(p, &coeffs);
        if r.degree().is_none_or(|rd| rd == 0) {
            continue;
        }
        let probe = if p == 2 {
            // Trace of r into GF(2): r + r² + … + r^{2^{d−1}} mod f.
            let mut term = r.clone();
            let mut trace = r.clone();
            for _ in 1..d {
                term = frobenius_step(&term, f);
                trace = trace.add(&term);
            }
            trace.rem(f).expect("nonzero modulus")
        } else {
            let e = odd_exponent.unwrap();
            pow_mod(&r, e, f).sub(&FieldPoly::one(p))
        };
        let g = f.gcd(&probe);
        if let Some(gd) = g.degree() {
            if gd > 0 && gd < deg {
                let rest = f.div_exact(&g).expect("gcd divides");
                let mut out = equal_degree(&g, d, rng)?;
                out.extend(equal_degree(&rest, d, rng)?);
                return Ok(out);
            }
        }
    }
    unreachable!("equal-degree splitting failed to find a splitter in 1000 draws");
}

fn pow_mod(base: &FieldPoly, mut e: u128, modulus: &FieldPoly) -> FieldPoly {
    let p = base.prime();
    let mut acc = FieldPoly::one(p);
    let mut b = base.rem(modulus).expect("nonzero modulus");
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b).rem(modulus).expect("nonzero modulus");
        }
        e >>= 1;
        if e > 0 {
            b = b.mul(&b).rem(modulus).expect("nonzero modulus");
        }
    }
    acc
}

fn sort_key(f: &FieldPoly) -> (usize, Vec<u8>) {
    (f.degree().unwrap_or(0), f.coeffs().to_vec())
}

/// Complete factorization of a nonzero polynomial into monic irreducibles
/// with multiplicities; the product reconstructs the input up to its leading
/// coefficient. Deterministic per generator state.
pub fn factor_poly(
    f: &FieldPoly,
    rng: &mut impl Rng,
) -> Result<Vec<(FieldPoly, usize)>, GfError> {
    if f.is_zero() {
        return Err(GfError::ZeroPolynomial);
    }
    let monic = f.make_monic();
    let mut out: Vec<(FieldPoly, usize)> = Vec::new();
    for (part, mult) in squarefree_parts(&monic) {
        let (products, rest) = distinct_degree(&part, None);
        debug_assert!(rest.degree().is_none_or(|d| d == 0));
        for (prod, d) in products {
            for irred in equal_degree(&prod, d, rng)? {
                out.push((irred, mult));
            }
        }
    }
    out.sort_by_key(|(f, _)| sort_key(f));
    Ok(out)
}

/// Distinct monic irreducible factors of degree ≤ `cap`, cheapest first.
/// Factors of larger degree are silently skipped; used by the chopper, which
/// only ever wants low-degree splitting candidates.
pub(crate) fn distinct_factors_upto(
    f: &FieldPoly,
    cap: usize,
    rng: &mut impl Rng,
) -> Result<Vec<FieldPoly>, GfError> {
    if f.is_zero() {
        return Err(GfError::ZeroPolynomial);
    }
    let monic = f.make_monic();
    let mut out: Vec<FieldPoly> = Vec::new();
    for (part, _) in squarefree_parts(&monic) {
        let (products, _rest) = distinct_degree(&part, Some(cap));
        for (prod, d) in products {
            if d <= cap {
                out.extend(equal_degree(&prod, d, rng)?);
            }
        }
    }
    out.sort_by_key(sort_key);
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    fn fp2(coeffs: &[u8]) -> FieldPoly {
        FieldPoly::from_coeffs(2, coeffs)
    }

    #[test]
    fn factor_x2_plus_x() {
        // x² + x = x(x+1).
        let f = fp2(&[0, 1, 1]);
        let factors = factor_poly(&f, &mut rng()).unwrap();
        assert_eq!(factors, vec![(fp2(&[0, 1]), 1), (fp2(&[1, 1]), 1)]);
    }

    #[test]
    fn irreducible_quadratic() {
        let f = fp2(&[1, 1, 1]);
        let factors = factor_poly(&f, &mut rng()).unwrap();
        assert_eq!(factors, vec![(f, 1)]);
    }

    #[test]
    fn repeated_quadratic() {
        // x⁴+x²+1 = (x²+x+1)².
        let f = fp2(&[1, 0, 1, 0, 1]);
        let factors = factor_poly(&f, &mut rng()).unwrap();
        assert_eq!(factors, vec![(fp2(&[1, 1, 1]), 2)]);
    }

    #[test]
    fn reconstructs_product_gf3() {
        let f = FieldPoly::from_coeffs(3, &[2, 0, 1, 1, 0, 2, 1]);
        let factors = factor_poly(&f, &mut rng()).unwrap();
        let mut prod = FieldPoly::one(3);
        for (g, m) in &factors {
            assert!(g.is_monic());
            for _ in 0..*m {
                prod = prod.mul(g);
            }
        }
        assert_eq!(prod, f.make_monic());
    }

    #[test]
    fn zero_rejected() {
        assert!(matches!(
            factor_poly(&FieldPoly::zero(2), &mut rng()),
            Err(GfError::ZeroPolynomial)
        ));
    }

    #[test]
    fn capped_scan_skips_large_factors() {
        // (x+1)·(x⁴+x+1): cap 1 sees only x+1.
        let f = fp2(&[1, 1]).mul(&fp2(&[1, 1, 0, 0, 1]));
        let found = distinct_factors_upto(&f, 1, &mut rng()).unwrap();
        assert_eq!(found, vec![fp2(&[1, 1])]);
        let all = distinct_factors_upto(&f, 4, &mut rng()).unwrap();
        assert_eq!(all.len(), 2);
    }
}
