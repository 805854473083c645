//! Built-in symplectic group presets `sp2` ... `sp10`: two-generator matrix
//! groups Sp_{2l}(2) with the anti-diagonal form, plus named distinguished
//! words for the rank-5 preset.
//!
//! The rank-5 generators are the explicit pair
//! `A = I + E_{1,5} + E_{1,10} + E_{6,10}` and the cycle
//! `B: 1 -> 2 -> ... -> 5 -> 10 -> 9 -> ... -> 6 -> 1`; ranks 3 and 4 use
//! the same pattern.  The rank-1 and rank-2 pairs are bespoke (the pattern
//! pair generates a proper subgroup at rank 2).  All generator sets are
//! validated behaviorally: load-time isometry checks here, closure orders
//! and torus-element orders in the test suite, irreducibility of the
//! natural module in the integration tests.

use crate::error::Error;
use crate::gf::FieldMatrix;
use crate::rep::{GroupWord, MatRep};
use crate::symplectic::{is_isometry, SymplecticForm};

/// A ready-to-use group fixture: generators, form, and named words.
#[derive(Clone, Debug)]
pub struct Preset {
    name: String,
    rank: usize,
    rep: MatRep,
    form: SymplecticForm,
    words: Vec<(String, GroupWord)>,
}

impl Preset {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Lie rank l; the natural module has dimension 2l.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rep(&self) -> &MatRep {
        &self.rep
    }

    pub fn form(&self) -> &SymplecticForm {
        &self.form
    }

    /// Named distinguished words (empty for most presets).
    pub fn words(&self) -> &[(String, GroupWord)] {
        &self.words
    }

    /// Looks up a named word.
    pub fn word(&self, name: &str) -> Option<&GroupWord> {
        self.words
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, w)| w)
    }

    /// Resolves a word argument: a distinguished name if known, otherwise
    /// parsed in the word grammar.
    pub fn resolve_word(&self, arg: &str) -> Result<GroupWord, Error> {
        if let Some(w) = self.word(arg) {
            return Ok(w.clone());
        }
        GroupWord::parse(arg)
    }
}

/// The available preset names, smallest rank first.
pub fn names() -> &'static [&'static str] {
    &["sp2", "sp4", "sp6", "sp8", "sp10"]
}

/// Loads a preset by its public name, e.g. `"sp10"`.
pub fn by_name(name: &str) -> Result<Preset, Error> {
    match name {
        "sp2" => Ok(sp(1)),
        "sp4" => Ok(sp(2)),
        "sp6" => Ok(sp(3)),
        "sp8" => Ok(sp(4)),
        "sp10" => Ok(sp(5)),
        other => Err(Error::Parse(format!(
            "unknown preset '{other}' (expected one of {})",
            names().join(", ")
        ))),
    }
}

/// Builds the rank-`l` preset, `1 <= l <= 5`.
pub fn sp(l: usize) -> Preset {
    assert!((1..=5).contains(&l), "presets cover ranks 1 through 5");
    let dim = 2 * l;
    let (a, b) = match l {
        1 => (
            FieldMatrix::from_entries(2, 2, 2, &[1, 1, 0, 1]),
            FieldMatrix::from_entries(2, 2, 2, &[0, 1, 1, 0]),
        ),
        2 => (
            FieldMatrix::from_entries(2, 4, 4, &[1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1]),
            FieldMatrix::from_entries(2, 4, 4, &[1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0]),
        ),
        _ => pattern_pair(l),
    };
    let rep = MatRep::new(vec!['A', 'B'], vec![a, b]).expect("preset generators are valid");
    let form = SymplecticForm::anti_diagonal(2, dim);
    for g in rep.gens() {
        assert!(
            is_isometry(g, &form).expect("square matching dimension"),
            "preset generator must preserve the form"
        );
    }
    let words = if l == 5 {
        vec![
            (
                "u".to_string(),
                GroupWord::parse("B4AB6AB5A").expect("fixed word parses"),
            ),
            (
                "u'".to_string(),
                GroupWord::parse("BAB2AB4AB3A").expect("fixed word parses"),
            ),
        ]
    } else {
        Vec::new()
    };
    Preset {
        name: format!("sp{dim}"),
        rank: l,
        rep,
        form,
        words,
    }
}

/// The rank >= 3 generator pattern: `A = I + E_{1,l} + E_{1,2l} + E_{l+1,2l}`
/// and the (2l)-cycle `B: 1 -> 2 -> ... -> l -> 2l -> 2l-1 -> ... -> l+1 -> 1`
/// acting on columns (`B e_j = e_{next(j)}`), both over GF(2).
fn pattern_pair(l: usize) -> (FieldMatrix, FieldMatrix) {
    let dim = 2 * l;
    let mut a = FieldMatrix::identity(2, dim);
    a.set(0, l - 1, 1);
    a.set(0, dim - 1, 1);
    a.set(l, dim - 1, 1);
    let mut cycle: Vec<usize> = (1..=l).collect();
    cycle.extend((l + 1..=dim).rev());
    let mut b = FieldMatrix::zeros(2, dim, dim);
    for (idx, &j) in cycle.iter().enumerate() {
        let i = cycle[(idx + 1) % cycle.len()];
        b.set(i - 1, j - 1, 1);
    }
    (a, b)
}
