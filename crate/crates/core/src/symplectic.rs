//! Symplectic forms and the characteristic-2 classification invariants of
//! unipotent isometries.
//!
//! Over a field of characteristic 2, the conjugacy class of a unipotent
//! isometry `u` of a non-degenerate alternating form is determined not by
//! its Jordan type alone but by the type decorated with the invariant
//! `chi(m)`: the least `n >= 0` such that the quadratic function
//! `Q_n(v) = beta(X^n v, X^{n+1} v)` (with `X = u - 1`) vanishes identically
//! on `Ker X^m`.  Since `Q_n` is quadratic, identical vanishing must be
//! certified on a kernel basis *and* on the polarization cross-terms of all
//! basis pairs; checking basis vectors alone is not sufficient.

use crate::error::Error;
use crate::gf::{FieldMatrix, FieldVector};
use crate::jordan::{is_unipotent, jordan_type, JordanType};
use crate::rep::{GroupWord, MatRep};
use crate::seeding::mix_seed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// A non-degenerate alternating bilinear form, stored by its Gram matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymplecticForm {
    gram: FieldMatrix,
}

impl SymplecticForm {
    /// Validates and wraps a Gram matrix: it must be square, invertible,
    /// with zero diagonal and `gram^T = -gram` (in characteristic 2 this
    /// reads `gram^T = gram`).
    pub fn new(gram: FieldMatrix) -> Result<Self, Error> {
        if !gram.is_square() {
            return Err(Error::InvalidForm(format!(
                "Gram matrix is {}x{}",
                gram.nrows(),
                gram.ncols()
            )));
        }
        let n = gram.nrows();
        for i in 0..n {
            if gram.get(i, i) != 0 {
                return Err(Error::InvalidForm(format!("nonzero diagonal entry at {i}")));
            }
        }
        if !gram.add(&gram.transpose()).expect("same shape").is_zero() {
            return Err(Error::InvalidForm("Gram matrix is not skew".into()));
        }
        if gram.rank() != n {
            return Err(Error::InvalidForm("Gram matrix is singular".into()));
        }
        Ok(SymplecticForm { gram })
    }

    /// The standard anti-diagonal form on an even-dimensional space: ones on
    /// the upper half of the anti-diagonal, minus ones on the lower half.
    pub fn anti_diagonal(p: u8, dim: usize) -> Self {
        assert!(dim.is_multiple_of(2), "alternating forms need even dimension");
        let mut gram = FieldMatrix::zeros(p, dim, dim);
        for i in 0..dim / 2 {
            gram.set(i, dim - 1 - i, 1);
            gram.set(dim - 1 - i, i, p - 1);
        }
        SymplecticForm::new(gram).expect("anti-diagonal form is valid")
    }

    pub fn gram(&self) -> &FieldMatrix {
        &self.gram
    }

    pub fn dimension(&self) -> usize {
        self.gram.nrows()
    }

    /// The pairing `beta(v, w) = v^T . gram . w` on column vectors.
    pub fn pairing(&self, v: &FieldVector, w: &FieldVector) -> u8 {
        v.dot(&self.gram.mul_vec(w))
    }
}

/// True iff `m` preserves the form: `m^T . gram . m = gram`.
pub fn is_isometry(m: &FieldMatrix, form: &SymplecticForm) -> Result<bool, Error> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            nrows: m.nrows(),
            ncols: m.ncols(),
        });
    }
    if m.nrows() != form.dimension() {
        return Err(Error::Gf(crate::gf::GfError::DimensionMismatch {
            op: "isometry check",
            lhs: format!("{}x{}", m.nrows(), m.ncols()),
            rhs: format!("{0}x{0}", form.dimension()),
        }));
    }
    let lhs = m
        .transpose()
        .mat_mul(form.gram())
        .and_then(|t| t.mat_mul(m))?;
    Ok(&lhs == form.gram())
}

/// The invariant `chi(m)` of a unipotent isometry `u`: the least `n >= 0`
/// such that `Q_n(v) = beta(X^n v, X^{n+1} v)` vanishes for every `v` in
/// `Ker X^m`, where `X = u - 1`.
///
/// Vanishing of the quadratic function on the kernel is certified on a
/// kernel basis together with the polarization cross-terms
/// `beta(X^n b_i, X^{n+1} b_j) + beta(X^n b_j, X^{n+1} b_i)` for all pairs
/// `i < j`.
pub fn chi(u: &FieldMatrix, form: &SymplecticForm, m: usize) -> Result<usize, Error> {
    if !is_unipotent(u)? {
        return Err(Error::NotUnipotent);
    }
    if !is_isometry(u, form)? {
        return Err(Error::NotIsometry);
    }
    let dim = u.nrows();
    let x = u
        .sub(&FieldMatrix::identity(u.prime(), dim))
        .expect("same shape");
    let xm = x.pow(m as u64)?;
    let kernel = xm.nullspace_basis();

    // cur[i] = X^n b_i, nxt[i] = X^{n+1} b_i for the current n.
    let mut cur = kernel;
    let mut nxt: Vec<FieldVector> = cur.iter().map(|v| x.mul_vec(v)).collect();
    for n in 0..=m {
        if quadratic_vanishes_on(form, &cur, &nxt) {
            return Ok(n);
        }
        debug_assert!(n < m, "Q_m vanishes identically on Ker X^m");
        cur = nxt;
        nxt = cur.iter().map(|v| x.mul_vec(v)).collect();
    }
    unreachable!("chi(m) is at most m");
}

/// Whether the quadratic function `Q(v) = beta(v', v'')` vanishes on the
/// whole span of a basis, given the images `cur[i] = X^n b_i` and
/// `nxt[i] = X^{n+1} b_i`.  Requires both the diagonal values `Q(b_i)` and
/// the polarization cross-terms of every basis pair to vanish; the diagonal
/// alone does not control the span.
fn quadratic_vanishes_on(form: &SymplecticForm, cur: &[FieldVector], nxt: &[FieldVector]) -> bool {
    let p = form.gram().prime() as u16;
    if !cur.iter().zip(nxt).all(|(c, nx)| form.pairing(c, nx) == 0) {
        return false;
    }
    for i in 0..cur.len() {
        for j in i + 1..cur.len() {
            let s = form.pairing(&cur[i], &nxt[j]) as u16;
            let t = form.pairing(&cur[j], &nxt[i]) as u16;
            if !(s + t).is_multiple_of(p) {
                return false;
            }
        }
    }
    true
}

/// Conjugacy-class label of a unipotent isometry in characteristic 2: the
/// Jordan block sizes with multiplicities, each size `d` decorated with
/// `chi(d)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HesselinkLabel {
    /// `(size, chi, multiplicity)` with sizes strictly increasing.
    parts: Vec<(usize, usize, usize)>,
}

impl HesselinkLabel {
    /// Builds a label from `(size, chi, multiplicity)` triples, validating
    /// strictly increasing sizes, positive multiplicities, and
    /// `0 <= chi <= size`.
    pub fn new(parts: Vec<(usize, usize, usize)>) -> Result<Self, Error> {
        for (i, &(size, chi, mult)) in parts.iter().enumerate() {
            if size == 0 || mult == 0 {
                return Err(Error::InvalidJordanType(format!(
                    "label part ({size},{chi},{mult}) invalid"
                )));
            }
            if chi > size {
                return Err(Error::InvalidJordanType(format!(
                    "chi {chi} exceeds block size {size}"
                )));
            }
            if i > 0 && parts[i - 1].0 >= size {
                return Err(Error::InvalidJordanType(
                    "label sizes not strictly increasing".into(),
                ));
            }
        }
        Ok(HesselinkLabel { parts })
    }

    /// The `(size, chi, multiplicity)` triples, sizes ascending.
    pub fn parts(&self) -> &[(usize, usize, usize)] {
        &self.parts
    }

    /// Forgets the chi decorations, leaving the plain Jordan type.
    pub fn jordan_type(&self) -> JordanType {
        JordanType::new(self.parts.iter().map(|&(d, _, n)| (d, n)).collect())
            .expect("label invariants imply type invariants")
    }
}

impl fmt::Display for HesselinkLabel {
    /// Renders as `(2_1^2, 6_3)`: each part `size_chi`, exponents elided
    /// when the multiplicity is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &(size, chi, mult)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{size}_{chi}")?;
            if mult > 1 {
                write!(f, "^{mult}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for HesselinkLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for HesselinkLabel {
    /// Serializes as an array of `[size, chi, multiplicity]` triples sorted
    /// by size.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HesselinkLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<(usize, usize, usize)>::deserialize(deserializer)?;
        HesselinkLabel::new(parts).map_err(D::Error::custom)
    }
}

/// Full class label of a unipotent isometry: Jordan type plus `chi` of each
/// distinct block size.
pub fn hesselink_label(u: &FieldMatrix, form: &SymplecticForm) -> Result<HesselinkLabel, Error> {
    let jt = jordan_type(u)?;
    let mut parts = Vec::with_capacity(jt.blocks().len());
    let mut prev_chi = 0;
    for &(d, mult) in jt.blocks() {
        let c = chi(u, form, d)?;
        assert!(
            c >= prev_chi,
            "chi must be weakly increasing in the kernel exponent"
        );
        prev_chi = c;
        parts.push((d, c, mult));
    }
    HesselinkLabel::new(parts)
}

/// Parameters for the randomized label search.
#[derive(Clone, Debug)]
pub struct SearchParams {
    /// Stop after this many consecutive words with no new label.
    pub saturation_window: usize,
    /// Random words have this many alternating generator powers at most
    /// (count uniform in `1..=max_syllables`).
    pub max_syllables: usize,
    /// Exponents drawn uniformly from `1..=max_exponent`.
    pub max_exponent: u32,
    /// Base seed; worker `i` uses a stream derived from `(seed, i)`.
    pub seed: u64,
    /// Number of parallel search workers.
    pub workers: usize,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            saturation_window: 20_000,
            max_syllables: 30,
            max_exponent: 16,
            seed: 0,
            workers: 1,
        }
    }
}

/// One collected conjugacy class: its label and the shortest unipotent
/// witness word found for it.
#[derive(Clone, Debug, Serialize)]
pub struct LabelWitness {
    pub label: HesselinkLabel,
    pub word: String,
    /// Total generator letters in the witness (sum of exponents).
    pub letters: u64,
}

/// Result of a randomized search for class labels.
#[derive(Clone, Debug, Serialize)]
pub struct LabelCollection {
    /// One entry per distinct label, sorted by label.
    pub entries: Vec<LabelWitness>,
    /// Total number of random words evaluated (all workers).
    pub words_tried: u64,
}

impl LabelCollection {
    pub fn labels(&self) -> Vec<&HesselinkLabel> {
        self.entries.iter().map(|e| &e.label).collect()
    }

    pub fn witness_for(&self, label: &HesselinkLabel) -> Option<GroupWord> {
        self.entries
            .iter()
            .find(|e| &e.label == label)
            .map(|e| GroupWord::parse(&e.word).expect("stored words parse"))
    }
}

/// Witness ranking: fewer letters first, then fewer syllables, then the
/// lexicographically smallest rendering, so the reported witness per label is
/// deterministic for a fixed seed and worker count.
fn better_witness(a: &GroupWord, b: &GroupWord) -> bool {
    let ka = (a.letter_count(), a.letters().len(), a.to_string());
    let kb = (b.letter_count(), b.letters().len(), b.to_string());
    ka < kb
}

fn search_worker(
    rep: &MatRep,
    form: &SymplecticForm,
    params: &SearchParams,
    worker_seed: u64,
) -> (BTreeMap<HesselinkLabel, GroupWord>, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(worker_seed);
    let mut found: BTreeMap<HesselinkLabel, GroupWord> = BTreeMap::new();
    let mut since_new = 0usize;
    let mut tried = 0u64;
    while since_new < params.saturation_window {
        let syllables = rng.gen_range(1..=params.max_syllables);
        let word = GroupWord::random_alternating(rep.names(), syllables, params.max_exponent, &mut rng);
        tried += 1;
        since_new += 1;
        let m = rep.evaluate_word(&word).expect("known symbols");
        if !is_unipotent(&m).expect("square") {
            continue;
        }
        let label = hesselink_label(&m, form).expect("unipotent isometry");
        match found.get_mut(&label) {
            None => {
                found.insert(label, word);
                since_new = 0;
            }
            Some(existing) => {
                if better_witness(&word, existing) {
                    *existing = word;
                }
            }
        }
    }
    (found, tried)
}

/// Randomized enumeration of class labels among the unipotent elements of
/// the group generated by `rep`, with a shortest witness word per label.
///
/// Each worker runs an independent seeded stream and stops once its
/// saturation window elapses with no new label; results are merged.  Runs
/// with one worker are fully deterministic per seed; more workers can only
/// enlarge the label set.
pub fn collect_labels(
    rep: &MatRep,
    form: &SymplecticForm,
    params: &SearchParams,
) -> Result<LabelCollection, Error> {
    for g in rep.gens() {
        if !is_isometry(g, form)? {
            return Err(Error::NotIsometry);
        }
    }
    let workers = params.workers.max(1);
    let mut merged: BTreeMap<HesselinkLabel, GroupWord> = BTreeMap::new();
    let mut words_tried = 0u64;
    if workers == 1 {
        let (found, tried) = search_worker(rep, form, params, mix_seed(params.seed, 0));
        merged = found;
        words_tried = tried;
    } else {
        let results: Vec<(BTreeMap<HesselinkLabel, GroupWord>, u64)> =
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..workers)
                    .map(|i| {
                        let seed = mix_seed(params.seed, i as u64);
                        scope.spawn(move || search_worker(rep, form, params, seed))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            });
        for (found, tried) in results {
            words_tried += tried;
            for (label, word) in found {
                match merged.get_mut(&label) {
                    None => {
                        merged.insert(label, word);
                    }
                    Some(existing) => {
                        if better_witness(&word, existing) {
                            *existing = word;
                        }
                    }
                }
            }
        }
    }
    let entries = merged
        .into_iter()
        .map(|(label, word)| LabelWitness {
            letters: word.letter_count(),
            word: word.to_string(),
            label,
        })
        .collect();
    Ok(LabelCollection {
        entries,
        words_tried,
    })
}
