//! Randomized composition-factor computation (a Meataxe) for matrix
//! representations over small prime fields.
//!
//! The splitting loop draws random low-degree algebra elements, picks
//! irreducible characteristic-polynomial factors of minimal nullity, and
//! applies the Norton criterion: spin a kernel vector on the primal side
//! and, for a factor of nullity equal to its degree, one on the transpose
//! side.  A proper spin on either side yields an invariant subspace; full
//! spins on both certify irreducibility.  `chop` recurses through
//! sub/quotient pairs and groups the resulting factors into isomorphism
//! classes by dimension plus a Jordan-type fingerprint on fixed probe
//! elements, refusing to guess when the fingerprint carries no data.

use crate::error::Error;
use crate::gf::{distinct_factors_upto, FieldMatrix, FieldPoly, FieldVector};
use crate::jordan::{is_unipotent, jordan_type, JordanType};
use crate::rep::{GroupWord, MatRep};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Resource limits for the randomized search.  Defaults are sized for
/// modules of dimension up to ~32,000 over GF(2).
#[derive(Clone, Debug)]
pub struct MeataxeConfig {
    /// Random algebra elements drawn before giving up on one module.
    pub max_elements: usize,
    /// Characteristic-polynomial factors tried per element (cheapest first).
    pub max_factors_per_element: usize,
    /// Degree cap for the partial distinct-degree factorization.
    pub factor_degree_cap: usize,
    /// Kernel basis vectors spun per candidate factor.
    pub max_kernel_spins: usize,
}

impl Default for MeataxeConfig {
    fn default() -> Self {
        MeataxeConfig {
            max_elements: 50,
            max_factors_per_element: 3,
            factor_degree_cap: 12,
            max_kernel_spins: 8,
        }
    }
}

/// How an irreducibility certificate was established.
#[derive(Clone, Debug)]
pub struct Certificate {
    /// The splitting element as (coefficient, word) terms.
    pub element: Vec<(u8, GroupWord)>,
    /// The irreducible characteristic-polynomial factor used.
    pub factor: FieldPoly,
    /// Nullity of factor(element); equals the factor degree.
    pub nullity: usize,
}

/// Outcome of the irreducibility test.
#[derive(Clone, Debug)]
pub enum Verdict {
    /// Certified irreducible.
    Irreducible(Certificate),
    /// A basis of a proper nonzero invariant subspace.
    Reducible(Vec<FieldVector>),
}

/// A random low-degree element of the generated matrix algebra: 3 to 8
/// terms, each a nonzero scalar times a word of length at most 6.
pub fn random_algebra_element<R: Rng>(rep: &MatRep, rng: &mut R) -> FieldMatrix {
    random_algebra_recipe(rep, rng).1
}

fn random_algebra_recipe<R: Rng>(
    rep: &MatRep,
    rng: &mut R,
) -> (Vec<(u8, GroupWord)>, FieldMatrix) {
    let p = rep.prime();
    let terms = rng.gen_range(3..=8);
    let mut recipe = Vec::with_capacity(terms);
    let mut acc = FieldMatrix::zeros(p, rep.dim(), rep.dim());
    for _ in 0..terms {
        let coeff = rng.gen_range(1..p);
        let len = rng.gen_range(0..=6);
        let word = GroupWord::random_letters(rep.names(), len, rng);
        let m = rep.evaluate_word(&word).expect("own symbols evaluate");
        for _ in 0..coeff {
            acc = acc.add(&m).expect("matching shapes");
        }
        recipe.push((coeff, word));
    }
    (recipe, acc)
}

/// Norton-style irreducibility test.
///
/// Draws random algebra elements until one decides the question, either
/// with a certificate or with an invariant-subspace witness; errors with a
/// resource limit if the configured search budget runs out first.
pub fn is_irreducible<R: Rng>(
    rep: &MatRep,
    rng: &mut R,
    cfg: &MeataxeConfig,
) -> Result<Verdict, Error> {
    let n = rep.dim();
    assert!(n >= 1, "irreducibility needs a nonzero module");
    for _ in 0..cfg.max_elements {
        let (recipe, theta) = random_algebra_recipe(rep, rng);
        let cpoly = theta.char_poly()?;
        let cands = distinct_factors_upto(&cpoly, cfg.factor_degree_cap, rng)?;
        // Candidates arrive cheapest (lowest degree) first; evaluate a few
        // and process in order of nullity, smallest first.
        let mut tried: Vec<(FieldPoly, FieldMatrix, usize)> = Vec::new();
        for f in cands.into_iter().take(cfg.max_factors_per_element) {
            let image = f.eval_matrix(&theta)?;
            let nullity = n - image.rank();
            tried.push((f, image, nullity));
        }
        tried.sort_by_key(|(f, _, nullity)| (*nullity, f.degree()));
        for (f, image, nullity) in tried {
            // Row convention: the algebra acts on the right, so module
            // kernel vectors are left null vectors of the image.
            let kernel = image.left_nullspace_basis();
            debug_assert_eq!(kernel.len(), nullity);
            for v in kernel.iter().take(cfg.max_kernel_spins) {
                let spun = rep.spin(std::slice::from_ref(v));
                if spun.len() < n {
                    return Ok(Verdict::Reducible(spun));
                }
            }
            if nullity == f.degree().unwrap_or(0) {
                // Good factor: one full dual-side spin completes the
                // certificate; a proper one dualizes to a witness.
                let dual_seed = &image.nullspace_basis()[0];
                let dual = rep.transpose();
                let spun = dual.spin(std::slice::from_ref(dual_seed));
                if spun.len() == n {
                    return Ok(Verdict::Irreducible(Certificate {
                        element: recipe,
                        factor: f,
                        nullity,
                    }));
                }
                let perp = FieldMatrix::from_rows(rep.prime(), n, &spun).nullspace_basis();
                debug_assert_eq!(perp.len(), n - spun.len());
                return Ok(Verdict::Reducible(perp));
            }
        }
    }
    Err(Error::ResourceLimit(format!(
        "irreducibility of a {n}-dimensional module undecided after {} random elements",
        cfg.max_elements
    )))
}

/// Composition factors with multiplicities; every factor is certified
/// irreducible and the dimensions weighted by multiplicity sum to the
/// dimension of the chopped module.
#[derive(Clone, Debug)]
pub struct CompositionFactors {
    factors: Vec<(MatRep, usize)>,
}

impl CompositionFactors {
    /// The factors with multiplicities, smallest dimension first.
    pub fn factors(&self) -> &[(MatRep, usize)] {
        &self.factors
    }

    /// Σ dim · multiplicity.
    pub fn total_dimension(&self) -> usize {
        self.factors.iter().map(|(f, m)| f.dim() * m).sum()
    }

    /// The (dimension, multiplicity) profile, smallest dimension first;
    /// distinct classes of equal dimension appear as separate entries.
    pub fn dimension_profile(&self) -> Vec<(usize, usize)> {
        self.factors.iter().map(|(f, m)| (f.dim(), *m)).collect()
    }

    /// Report form with run metadata.
    pub fn report(&self, total_dim: usize, seed: u64, elapsed_ms: u64) -> ChopReport {
        ChopReport {
            dim: total_dim,
            factors: self
                .factors
                .iter()
                .map(|(f, m)| FactorCount { dim: f.dim(), mult: *m })
                .collect(),
            seed,
            elapsed_ms,
        }
    }
}

/// One line of a chop report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorCount {
    pub dim: usize,
    pub mult: usize,
}

/// JSON-serializable chop summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChopReport {
    pub dim: usize,
    pub factors: Vec<FactorCount>,
    pub seed: u64,
    pub elapsed_ms: u64,
}

/// Splits a module into its full list of composition factors.
pub fn chop<R: Rng>(
    rep: &MatRep,
    rng: &mut R,
    cfg: &MeataxeConfig,
) -> Result<CompositionFactors, Error> {
    let mut leaves: Vec<MatRep> = Vec::new();
    let mut stack = vec![rep.clone()];
    while let Some(m) = stack.pop() {
        if m.dim() == 0 {
            continue;
        }
        match is_irreducible(&m, rng, cfg)? {
            Verdict::Irreducible(_) => leaves.push(m),
            Verdict::Reducible(witness) => {
                let (sub, quot) = m.sub_quotient(&witness)?;
                stack.push(sub);
                stack.push(quot);
            }
        }
    }
    let factors = group_by_fingerprint(leaves)?;
    let out = CompositionFactors { factors };
    assert_eq!(
        out.total_dimension(),
        rep.dim(),
        "factor dimensions must add up to the module dimension"
    );
    Ok(out)
}

/// The unique composition factor of dimension `d` (up to isomorphism);
/// errors if no factor or several non-isomorphic factors have that
/// dimension.
pub fn find_factor_of_dim<R: Rng>(
    rep: &MatRep,
    d: usize,
    rng: &mut R,
    cfg: &MeataxeConfig,
) -> Result<MatRep, Error> {
    let cf = chop(rep, rng, cfg)?;
    let mut hits = cf
        .factors
        .into_iter()
        .filter(|(f, _)| f.dim() == d)
        .map(|(f, _)| f);
    match (hits.next(), hits.next()) {
        (None, _) => Err(Error::NoFactorOfDim(d)),
        (Some(f), None) => Ok(f),
        (Some(_), Some(_)) => Err(Error::MultipleFactorsOfDim(d)),
    }
}

/// One Jordan type per probe element where the image is unipotent.
type Fingerprint = Vec<Option<JordanType>>;

/// Probe elements: the generator images in symbol order, then three fixed
/// words in the first two symbols (doubled up for one-generator algebras).
fn probe_words(names: &[char]) -> Vec<GroupWord> {
    let a = names[0];
    let b = if names.len() > 1 { names[1] } else { names[0] };
    let mut probes: Vec<GroupWord> = names
        .iter()
        .map(|&c| {
            let mut w = GroupWord::empty();
            w.push(c, 1);
            w
        })
        .collect();
    for pattern in ["AB", "ABB", "AABAB"] {
        let mut w = GroupWord::empty();
        for ch in pattern.chars() {
            w.push(if ch == 'A' { a } else { b }, 1);
        }
        probes.push(w);
    }
    probes
}

fn fingerprint(rep: &MatRep) -> Result<Fingerprint, Error> {
    probe_words(rep.names())
        .iter()
        .map(|w| {
            let m = rep.evaluate_word(w)?;
            if is_unipotent(&m)? {
                Ok(Some(jordan_type(&m)?))
            } else {
                Ok(None)
            }
        })
        .collect()
}

/// Groups certified-irreducible leaves into isomorphism classes.
///
/// Same dimension and equal fingerprints mean the same class — sound for
/// any genuinely repeated factor, and adequate here because distinct
/// irreducibles of equal dimension differ on some probe in all supported
/// chops.  An equal but all-undefined fingerprint carries no evidence
/// either way, so that case is an error rather than a guess.
fn group_by_fingerprint(mut leaves: Vec<MatRep>) -> Result<Vec<(MatRep, usize)>, Error> {
    leaves.sort_by_key(MatRep::dim);
    struct Class {
        rep: MatRep,
        fp: Option<Fingerprint>,
        mult: usize,
    }
    let mut classes: Vec<Class> = Vec::new();
    'next_leaf: for leaf in leaves {
        let dim = leaf.dim();
        if classes.iter().all(|c| c.rep.dim() != dim) {
            classes.push(Class { rep: leaf, fp: None, mult: 1 });
            continue;
        }
        let leaf_fp = fingerprint(&leaf)?;
        for class in classes.iter_mut().filter(|c| c.rep.dim() == dim) {
            if class.fp.is_none() {
                class.fp = Some(fingerprint(&class.rep)?);
            }
            if class.fp.as_ref() == Some(&leaf_fp) {
                if leaf_fp.iter().all(Option::is_none) {
                    return Err(Error::FingerprintAmbiguity(dim));
                }
                class.mult += 1;
                continue 'next_leaf;
            }
        }
        classes.push(Class { rep: leaf, fp: Some(leaf_fp), mult: 1 });
    }
    Ok(classes.into_iter().map(|c| (c.rep, c.mult)).collect())
}
