//! Matrix representations of finitely generated groups and the functorial
//! constructions used throughout: word evaluation, tensor product, exterior
//! power, dual, submodule spinning, and sub/quotient actions.
//!
//! Modules are *row* modules: a vector `v` is a row, a generator `g` acts on
//! the right as `v * g`, and evaluating the word `AB` means "apply `A`, then
//! `B`".  All constructions are functorial with respect to this convention.

use crate::error::Error;
use crate::gf::{FieldMatrix, FieldVector, RowSpace, SubspaceSolver};
use rand::Rng;
use std::fmt;

/// A word in named generators: an ordered list of `(symbol, exponent)`
/// syllables, e.g. `B^4 A B^6 A B^5 A`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GroupWord {
    letters: Vec<(char, u32)>,
}

impl GroupWord {
    /// The empty word (identity element).
    pub fn empty() -> Self {
        GroupWord::default()
    }

    /// Parses the compact grammar: a concatenation of `<symbol><optional
    /// decimal exponent>`, e.g. `"B4AB6AB5A"`.  Whitespace is ignored;
    /// exponents must be positive.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let mut word = GroupWord::empty();
        let mut chars = s.chars().peekable();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            if !c.is_ascii_alphabetic() {
                return Err(Error::Parse(format!("unexpected character '{c}' in word")));
            }
            chars.next();
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            let exp = if digits.is_empty() {
                1
            } else {
                digits
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("exponent '{digits}' out of range")))?
            };
            if exp == 0 {
                return Err(Error::Parse(format!("zero exponent for symbol '{c}'")));
            }
            word.push(c, exp);
        }
        Ok(word)
    }

    /// Appends a syllable, merging with the previous one when the symbol
    /// repeats.
    pub fn push(&mut self, symbol: char, exp: u32) {
        assert!(exp > 0, "exponent must be positive");
        if let Some(last) = self.letters.last_mut() {
            if last.0 == symbol {
                last.1 += exp;
                return;
            }
        }
        self.letters.push((symbol, exp));
    }

    /// The `(symbol, exponent)` syllables in order.
    pub fn letters(&self) -> &[(char, u32)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Total number of generator letters (sum of exponents).
    pub fn letter_count(&self) -> u64 {
        self.letters.iter().map(|&(_, e)| e as u64).sum()
    }

    /// A random word of `syllables` alternating generator powers: each
    /// symbol differs from its predecessor, exponents uniform in
    /// `1..=max_exp`.
    pub fn random_alternating<R: Rng>(
        names: &[char],
        syllables: usize,
        max_exp: u32,
        rng: &mut R,
    ) -> Self {
        assert!(!names.is_empty(), "need at least one generator symbol");
        let mut word = GroupWord::empty();
        let mut prev: Option<char> = None;
        for _ in 0..syllables {
            let sym = loop {
                let c = names[rng.gen_range(0..names.len())];
                if names.len() == 1 || Some(c) != prev {
                    break c;
                }
            };
            prev = Some(sym);
            word.push(sym, rng.gen_range(1..=max_exp));
        }
        word
    }

    /// A random product of `len` single generator letters (repeats allowed).
    pub fn random_letters<R: Rng>(names: &[char], len: usize, rng: &mut R) -> Self {
        assert!(!names.is_empty(), "need at least one generator symbol");
        let mut word = GroupWord::empty();
        for _ in 0..len {
            word.push(names[rng.gen_range(0..names.len())], 1);
        }
        word
    }
}

impl fmt::Display for GroupWord {
    /// Renders in the parse grammar, eliding exponent 1: `B4AB6AB5A`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(sym, exp) in &self.letters {
            if exp == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}{exp}")?;
            }
        }
        Ok(())
    }
}

/// A matrix representation: an ordered list of invertible generator matrices
/// of a common dimension over a common prime, addressed by one-letter
/// symbols.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatRep {
    prime: u8,
    dim: usize,
    names: Vec<char>,
    gens: Vec<FieldMatrix>,
}

impl MatRep {
    /// Builds and fully validates a representation: symbols must be distinct
    /// ASCII letters, generators square of equal dimension and prime, and
    /// each generator invertible.
    pub fn new(names: Vec<char>, gens: Vec<FieldMatrix>) -> Result<Self, Error> {
        if names.len() != gens.len() {
            return Err(Error::Parse(format!(
                "{} symbols for {} generators",
                names.len(),
                gens.len()
            )));
        }
        for &c in &names {
            if !c.is_ascii_alphabetic() {
                return Err(Error::Parse(format!("generator symbol '{c}' not a letter")));
            }
            if names.iter().filter(|&&d| d == c).count() > 1 {
                return Err(Error::Parse(format!("duplicate generator symbol '{c}'")));
            }
        }
        let prime = gens.first().map_or(2, FieldMatrix::prime);
        let dim = gens.first().map_or(0, FieldMatrix::nrows);
        for g in &gens {
            if !g.is_square() || g.nrows() != dim || g.prime() != prime {
                return Err(Error::Parse(
                    "generators must be square, same dimension, same prime".into(),
                ));
            }
            if g.rank() != dim {
                return Err(Error::Parse("generator is singular".into()));
            }
        }
        Ok(MatRep {
            prime,
            dim,
            names,
            gens,
        })
    }

    /// Internal constructor for derived representations whose generators are
    /// invertible by construction (products, Kronecker/exterior images,
    /// inverse transposes, restrictions of invertible actions).
    fn from_derived(prime: u8, dim: usize, names: Vec<char>, gens: Vec<FieldMatrix>) -> Self {
        debug_assert_eq!(names.len(), gens.len());
        debug_assert!(gens.iter().all(|g| g.nrows() == dim && g.ncols() == dim));
        MatRep {
            prime,
            dim,
            names,
            gens,
        }
    }

    /// The trivial (all-identity) representation of the given dimension with
    /// the given symbols.
    pub fn trivial(prime: u8, dim: usize, names: &[char]) -> Self {
        let gens = names
            .iter()
            .map(|_| FieldMatrix::identity(prime, dim))
            .collect();
        MatRep::from_derived(prime, dim, names.to_vec(), gens)
    }

    pub fn prime(&self) -> u8 {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    pub fn gens(&self) -> &[FieldMatrix] {
        &self.gens
    }

    /// The generator matrix for a symbol, if present.
    pub fn gen_by_name(&self, symbol: char) -> Option<&FieldMatrix> {
        self.names
            .iter()
            .position(|&c| c == symbol)
            .map(|i| &self.gens[i])
    }

    fn require_same_symbols(&self, other: &MatRep) -> Result<(), Error> {
        if self.prime != other.prime {
            return Err(Error::Gf(crate::gf::GfError::PrimeMismatch(
                self.prime,
                other.prime,
            )));
        }
        if self.names != other.names {
            return Err(Error::SymbolMismatch(
                self.names.iter().collect(),
                other.names.iter().collect(),
            ));
        }
        Ok(())
    }

    /// Evaluates a word as the left-to-right product of generator powers.
    pub fn evaluate_word(&self, word: &GroupWord) -> Result<FieldMatrix, Error> {
        let mut acc = FieldMatrix::identity(self.prime, self.dim);
        for &(sym, exp) in word.letters() {
            let g = self
                .gen_by_name(sym)
                .ok_or(Error::UnknownSymbol(sym))?;
            let p = g.pow(exp as u64)?;
            acc = acc.mat_mul(&p)?;
        }
        Ok(acc)
    }

    /// Tensor product: generator-wise Kronecker product, dimension the
    /// product of dimensions.  Requires matching primes and symbol lists.
    pub fn tensor(&self, other: &MatRep) -> Result<MatRep, Error> {
        self.require_same_symbols(other)?;
        let mut gens = Vec::with_capacity(self.gens.len());
        for (a, b) in self.gens.iter().zip(&other.gens) {
            gens.push(a.kronecker(b)?);
        }
        Ok(MatRep::from_derived(
            self.prime,
            self.dim * other.dim,
            self.names.clone(),
            gens,
        ))
    }

    /// `i`-th exterior power: the action on the basis of `i`-element index
    /// subsets in colexicographic order; the `(S,T)` entry of the image of
    /// `g` is the minor `det g[S,T]`.
    pub fn exterior_power(&self, i: usize) -> Result<MatRep, Error> {
        if i == 0 || i > self.dim {
            return Err(Error::ExteriorIndex { i, dim: self.dim });
        }
        let subsets = colex_subsets(self.dim, i);
        let ext_dim = subsets.len();
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let mut entries = vec![0u8; ext_dim * ext_dim];
            for (si, s) in subsets.iter().enumerate() {
                for (ti, t) in subsets.iter().enumerate() {
                    entries[si * ext_dim + ti] = g.minor_det(s, t);
                }
            }
            gens.push(FieldMatrix::from_entries(
                self.prime, ext_dim, ext_dim, &entries,
            ));
        }
        Ok(MatRep::from_derived(
            self.prime,
            ext_dim,
            self.names.clone(),
            gens,
        ))
    }

    /// Dual representation: generator-wise inverse transpose.
    pub fn dual(&self) -> MatRep {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                g.mat_inverse()
                    .expect("generators are invertible")
                    .transpose()
            })
            .collect();
        MatRep::from_derived(self.prime, self.dim, self.names.clone(), gens)
    }

    /// Transpose representation (generator-wise transpose).  Not a module
    /// for the same group word order, but exactly what the dual-side
    /// irreducibility test needs.
    pub fn transpose(&self) -> MatRep {
        let gens = self.gens.iter().map(FieldMatrix::transpose).collect();
        MatRep::from_derived(self.prime, self.dim, self.names.clone(), gens)
    }

    /// Spins seed vectors up to a basis of the smallest subspace containing
    /// them and closed under all generators.  Returns the row-echelon basis.
    pub fn spin(&self, seeds: &[FieldVector]) -> Vec<FieldVector> {
        let mut space = RowSpace::new(self.prime, self.dim);
        let mut queue: Vec<FieldVector> = Vec::new();
        for s in seeds {
            assert_eq!(s.len(), self.dim, "seed length must equal the dimension");
            let r = space.reduce(s);
            if space.insert(&r) {
                queue.push(r);
            }
        }
        // Closing each newly found direction under the generators closes the
        // whole span: every element is a combination of processed vectors.
        while let Some(v) = queue.pop() {
            if space.dim() == self.dim {
                break;
            }
            for g in &self.gens {
                let r = space.reduce(&v.mul_mat(g));
                if space.insert(&r) {
                    queue.push(r);
                }
            }
        }
        space.rows().to_vec()
    }

    /// Induced actions on an invariant subspace (in the coordinates of the
    /// given basis) and on the quotient by it (in the coordinates of the
    /// standard basis vectors at non-pivot indices, lowest indices first).
    pub fn sub_quotient(&self, basis: &[FieldVector]) -> Result<(MatRep, MatRep), Error> {
        let solver = SubspaceSolver::from_basis(self.prime, self.dim, basis)
            .ok_or(Error::DependentBasis)?;
        let s = basis.len();

        // Action on the subspace, relative to the given (ordered) basis.
        let mut sub_gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let mut entries = vec![0u8; s * s];
            for (bi, b) in basis.iter().enumerate() {
                let image = b.mul_mat(g);
                let coords = solver.coords(&image).ok_or(Error::NotInvariant)?;
                entries[bi * s..(bi + 1) * s].copy_from_slice(&coords);
            }
            sub_gens.push(FieldMatrix::from_entries(self.prime, s, s, &entries));
        }
        let sub = MatRep::from_derived(self.prime, s, self.names.clone(), sub_gens);

        // Quotient coordinates: standard basis vectors at the non-pivot
        // indices; reducing any vector modulo the subspace zeroes its pivot
        // coordinates, leaving exactly the quotient coordinates.
        let pivots = solver.pivots();
        let complement: Vec<usize> = (0..self.dim).filter(|j| !pivots.contains(j)).collect();
        let q = complement.len();
        let mut space = RowSpace::new(self.prime, self.dim);
        for b in basis {
            space.insert(b);
        }
        let mut quot_gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let mut entries = vec![0u8; q * q];
            for (ci, &c) in complement.iter().enumerate() {
                let image = space.reduce(&FieldVector::unit(self.prime, self.dim, c).mul_mat(g));
                for (cj, &c2) in complement.iter().enumerate() {
                    entries[ci * q + cj] = image.get(c2);
                }
            }
            quot_gens.push(FieldMatrix::from_entries(self.prime, q, q, &entries));
        }
        let quot = MatRep::from_derived(self.prime, q, self.names.clone(), quot_gens);
        Ok((sub, quot))
    }

    /// Serializes to the representation file format: a header line
    /// `p dim ngens`, then each generator as a `gen <symbol>` line followed
    /// by the matrix in the standard text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.prime, self.dim, self.gens.len());
        for (c, g) in self.names.iter().zip(&self.gens) {
            out.push_str(&format!("gen {c}\n"));
            out.push_str(&g.to_text());
        }
        out
    }

    /// Parses the representation file format produced by [`Self::to_text`];
    /// validates fully (including generator invertibility).
    pub fn parse_text(s: &str) -> Result<MatRep, Error> {
        let mut lines = s.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!(
                "expected header 'p dim ngens', got '{header}'"
            )));
        }
        let parse_num = |s: &str| -> Result<usize, Error> {
            s.parse()
                .map_err(|_| Error::Parse(format!("bad number '{s}' in header")))
        };
        let prime = parse_num(fields[0])? as u8;
        let dim = parse_num(fields[1])?;
        let ngens = parse_num(fields[2])?;
        let mut names = Vec::with_capacity(ngens);
        let mut gens = Vec::with_capacity(ngens);
        for _ in 0..ngens {
            let gen_line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing 'gen' line".into()))?;
            let mut parts = gen_line.split_whitespace();
            if parts.next() != Some("gen") {
                return Err(Error::Parse(format!(
                    "expected 'gen <symbol>', got '{gen_line}'"
                )));
            }
            let symbol = parts
                .next()
                .ok_or_else(|| Error::Parse("missing generator symbol".into()))?;
            if symbol.chars().count() != 1 || parts.next().is_some() {
                return Err(Error::Parse(format!(
                    "generator symbol must be one letter, got '{gen_line}'"
                )));
            }
            names.push(symbol.chars().next().unwrap());
            // The matrix block: a size line plus `dim` rows.
            let mut block = String::new();
            let size_line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing matrix header".into()))?;
            block.push_str(size_line);
            block.push('\n');
            for _ in 0..dim {
                let row = lines
                    .next()
                    .ok_or_else(|| Error::Parse("truncated matrix block".into()))?;
                block.push_str(row);
                block.push('\n');
            }
            let m = FieldMatrix::parse_text(&block)?;
            if m.prime() != prime || m.nrows() != dim || m.ncols() != dim {
                return Err(Error::Parse(format!(
                    "generator block {}x{} over GF({}) does not match header",
                    m.nrows(),
                    m.ncols(),
                    m.prime()
                )));
            }
            gens.push(m);
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("trailing content after last generator".into()));
        }
        MatRep::new(names, gens)
    }
}

/// All `k`-element subsets of `{0..n-1}` in colexicographic order (`S`
/// precedes `T` iff the largest element where they differ lies in `T`).
fn colex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for last in (k - 1)..n {
        for mut s in colex_subsets(last, k - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::jordan_type;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_invertible(p: u8, n: usize, rng: &mut ChaCha8Rng) -> FieldMatrix {
        loop {
            let entries: Vec<u8> = (0..n * n).map(|_| rng.gen_range(0..p)).collect();
            let g = FieldMatrix::from_entries(p, n, n, &entries);
            if g.rank() == n {
                return g;
            }
        }
    }

    fn random_rep(p: u8, n: usize, rng: &mut ChaCha8Rng) -> MatRep {
        MatRep::new(
            vec!['A', 'B'],
            vec![random_invertible(p, n, rng), random_invertible(p, n, rng)],
        )
        .unwrap()
    }

    /// 4-dimensional symplectic pair over GF(2) used as a small concrete
    /// group: A = I + E12 + E14 + E34, B the cycle-with-correction below.
    fn sp4_rep() -> MatRep {
        let a = FieldMatrix::from_entries(
            2,
            4,
            4,
            &[1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1],
        );
        let b = FieldMatrix::from_entries(
            2,
            4,
            4,
            &[1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0],
        );
        MatRep::new(vec!['A', 'B'], vec![a, b]).unwrap()
    }

    #[test]
    fn word_parse_display_round_trip() {
        let w = GroupWord::parse("B4AB6AB5A").unwrap();
        assert_eq!(w.letters().len(), 6);
        assert_eq!(w.to_string(), "B4AB6AB5A");
        assert_eq!(w.letter_count(), 4 + 1 + 6 + 1 + 5 + 1);
        let spaced = GroupWord::parse(" B4 A B6\nA B5 A ").unwrap();
        assert_eq!(spaced, w);
        assert!(GroupWord::parse("B0").is_err());
        assert!(GroupWord::parse("4B").is_err());
        assert!(GroupWord::parse("B+A").is_err());
        assert_eq!(GroupWord::parse("").unwrap(), GroupWord::empty());
        // Adjacent same-symbol syllables merge.
        assert_eq!(GroupWord::parse("A3A2").unwrap().to_string(), "A5");
    }

    #[test]
    fn evaluate_words() {
        let rep = sp4_rep();
        let id = rep.evaluate_word(&GroupWord::empty()).unwrap();
        assert!(id.is_identity());
        let a = rep.evaluate_word(&GroupWord::parse("A").unwrap()).unwrap();
        assert_eq!(&a, rep.gen_by_name('A').unwrap());
        // AB means "A then B" acting on rows: the product A*B.
        let ab = rep.evaluate_word(&GroupWord::parse("AB").unwrap()).unwrap();
        let manual = rep.gens()[0].mat_mul(&rep.gens()[1]).unwrap();
        assert_eq!(ab, manual);
        let a2 = rep.evaluate_word(&GroupWord::parse("A2").unwrap()).unwrap();
        assert!(a2.is_identity(), "A is an involution in this group");
        assert!(matches!(
            rep.evaluate_word(&GroupWord::parse("C").unwrap()),
            Err(Error::UnknownSymbol('C'))
        ));
    }

    #[test]
    fn tensor_dimensions_and_functoriality() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for p in [2u8, 3] {
            let r1 = random_rep(p, 3, &mut rng);
            let r2 = random_rep(p, 4, &mut rng);
            let t = r1.tensor(&r2).unwrap();
            assert_eq!(t.dim(), 12);
            let w = GroupWord::parse("AB2A3B").unwrap();
            let lhs = t.evaluate_word(&w).unwrap();
            let rhs = r1
                .evaluate_word(&w)
                .unwrap()
                .kronecker(&r2.evaluate_word(&w).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn tensor_with_trivial_is_identity_on_entries() {
        let rep = sp4_rep();
        let triv = MatRep::trivial(2, 1, rep.names());
        let t = rep.tensor(&triv).unwrap();
        assert_eq!(t, rep);
        let t2 = triv.tensor(&rep).unwrap();
        assert_eq!(t2, rep);
    }

    #[test]
    fn tensor_symbol_mismatch() {
        let rep = sp4_rep();
        let other = MatRep::trivial(2, 1, &['X', 'Y']);
        assert!(matches!(
            rep.tensor(&other),
            Err(Error::SymbolMismatch(_, _))
        ));
    }

    #[test]
    fn exterior_basics() {
        let rep = sp4_rep();
        let e1 = rep.exterior_power(1).unwrap();
        assert_eq!(e1, rep);
        let e2 = rep.exterior_power(2).unwrap();
        assert_eq!(e2.dim(), 6);
        assert!(rep.exterior_power(0).is_err());
        assert!(rep.exterior_power(5).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let r10 = random_rep(2, 10, &mut rng);
        assert_eq!(r10.exterior_power(2).unwrap().dim(), 45);
    }

    #[test]
    fn exterior_functorial() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for p in [2u8, 3] {
            for i in 1..=3usize {
                let r = random_rep(p, 6, &mut rng);
                let ext = r.exterior_power(i).unwrap();
                let w = GroupWord::parse("ABA2B2").unwrap();
                let lhs = ext.evaluate_word(&w).unwrap();
                // Image of the word under the exterior construction applied
                // directly to the evaluated matrix.
                let m = r.evaluate_word(&w).unwrap();
                let one_gen = MatRep::new(vec!['M'], vec![m]).unwrap();
                let rhs = one_gen.exterior_power(i).unwrap().gens()[0].clone();
                assert_eq!(lhs, rhs, "p={p} i={i}");
            }
        }
    }

    #[test]
    fn dual_involutive_and_type_preserving() {
        let rep = sp4_rep();
        assert_eq!(rep.dual().dual(), rep);
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..5 {
            let w = GroupWord::random_alternating(rep.names(), 6, 4, &mut rng);
            let m = rep.evaluate_word(&w).unwrap();
            let d = rep.dual().evaluate_word(&w).unwrap();
            if crate::jordan::is_unipotent(&m).unwrap() {
                assert_eq!(jordan_type(&m).unwrap(), jordan_type(&d).unwrap());
            }
        }
        // A permutation representation is self-dual.
        let perm = FieldMatrix::from_entries(3, 3, 3, &[0, 1, 0, 0, 0, 1, 1, 0, 0]);
        let prep = MatRep::new(vec!['P'], vec![perm]).unwrap();
        assert_eq!(prep.dual(), prep);
    }

    #[test]
    fn spin_trivial_cases() {
        let rep = sp4_rep();
        assert!(rep.spin(&[]).is_empty());
        assert_eq!(rep.spin(&[FieldVector::zeros(2, 4)]).len(), 0);
        // The natural 4-dim module is irreducible: any seed spins up fully.
        for j in 0..4 {
            let basis = rep.spin(&[FieldVector::unit(2, 4, j)]);
            assert_eq!(basis.len(), 4, "seed e_{j}");
        }
    }

    #[test]
    fn spin_finds_invariant_line_in_ext2() {
        let ext2 = sp4_rep().exterior_power(2).unwrap();
        // Common fixed vectors of all generators: kernel of stacked (g - I).
        let eye = FieldMatrix::identity(2, 6);
        let mut rows = Vec::new();
        for g in ext2.gens() {
            let delta = g.sub(&eye).unwrap().transpose();
            for i in 0..6 {
                rows.push(delta.row_vec(i));
            }
        }
        let stacked = FieldMatrix::from_rows(2, 6, &rows);
        let fixed = stacked.nullspace_basis();
        assert_eq!(fixed.len(), 1, "unique invariant line");
        let basis = ext2.spin(&fixed);
        assert_eq!(basis.len(), 1);
        // Spin output is invariant under every generator.
        let mut space = RowSpace::new(2, 6);
        for b in &basis {
            space.insert(b);
        }
        for g in ext2.gens() {
            for b in &basis {
                assert!(space.contains(&b.mul_mat(g)));
            }
        }
    }

    #[test]
    fn sub_quotient_dimensions() {
        let ext2 = sp4_rep().exterior_power(2).unwrap();
        let full: Vec<FieldVector> = (0..6).map(|j| FieldVector::unit(2, 6, j)).collect();
        let (sub, quot) = ext2.sub_quotient(&full).unwrap();
        assert_eq!((sub.dim(), quot.dim()), (6, 0));
        assert_eq!(sub, ext2);
        let (sub0, quot0) = ext2.sub_quotient(&[]).unwrap();
        assert_eq!((sub0.dim(), quot0.dim()), (0, 6));
        assert_eq!(quot0, ext2);
    }

    #[test]
    fn sub_quotient_on_invariant_line() {
        let ext2 = sp4_rep().exterior_power(2).unwrap();
        let eye = FieldMatrix::identity(2, 6);
        let mut rows = Vec::new();
        for g in ext2.gens() {
            let delta = g.sub(&eye).unwrap().transpose();
            for i in 0..6 {
                rows.push(delta.row_vec(i));
            }
        }
        let fixed = FieldMatrix::from_rows(2, 6, &rows).nullspace_basis();
        let (sub, quot) = ext2.sub_quotient(&fixed).unwrap();
        assert_eq!(sub.dim(), 1);
        assert!(sub.gens().iter().all(FieldMatrix::is_identity));
        assert_eq!(quot.dim(), 5);
        // Functoriality survives the quotient: word images multiply.
        let w = GroupWord::parse("AB2A").unwrap();
        let img = quot.evaluate_word(&w).unwrap();
        let a = quot.gens()[0].clone();
        let b = quot.gens()[1].clone();
        let manual = a
            .mat_mul(&b)
            .unwrap()
            .mat_mul(&b)
            .unwrap()
            .mat_mul(&a)
            .unwrap();
        assert_eq!(img, manual);
    }

    #[test]
    fn sub_quotient_rejects_bad_bases() {
        let rep = sp4_rep();
        // Dependent list.
        let v = FieldVector::unit(2, 4, 0);
        assert!(matches!(
            rep.sub_quotient(&[v.clone(), v.clone()]),
            Err(Error::DependentBasis)
        ));
        // Independent but not invariant.
        assert!(matches!(
            rep.sub_quotient(&[v]),
            Err(Error::NotInvariant)
        ));
    }

    #[test]
    fn file_format_round_trip() {
        let rep = sp4_rep();
        let text = rep.to_text();
        assert!(text.starts_with("2 4 2\ngen A\n2 4 4\n"));
        let back = MatRep::parse_text(&text).unwrap();
        assert_eq!(back, rep);
        assert!(MatRep::parse_text("").is_err());
        assert!(MatRep::parse_text("2 4 2\n").is_err());
        let mut truncated = text.clone();
        truncated.truncate(text.len() - 3);
        assert!(MatRep::parse_text(&truncated).is_err());
    }

    #[test]
    fn colex_order_fixed() {
        let subsets = colex_subsets(4, 2);
        assert_eq!(
            subsets,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 3],
                vec![1, 3],
                vec![2, 3],
            ]
        );
        assert_eq!(colex_subsets(10, 5).len(), 252);
    }

    #[test]
    fn random_word_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for _ in 0..20 {
            let w = GroupWord::random_alternating(&['A', 'B'], 7, 6, &mut rng);
            assert_eq!(w.letters().len(), 7);
            for pair in w.letters().windows(2) {
                assert_ne!(pair[0].0, pair[1].0, "symbols must alternate");
            }
            assert!(w.letters().iter().all(|&(_, e)| (1..=6).contains(&e)));
        }
        let w = GroupWord::random_letters(&['A', 'B'], 6, &mut rng);
        assert!(w.letter_count() == 6);
    }
}
