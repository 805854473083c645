//! `classify`: evaluate a word on the natural module and report its
//! unipotency, order, Jordan type, and class label.

use crate::config::RunConfig;
use crate::{emit_json, CliError, VERSION};
use serde::Serialize;
use unirep::jordan::{is_unipotent, jordan_type, unipotent_order};
use unirep::symplectic::hesselink_label;
use unirep::{presets, FieldMatrix};

#[derive(Serialize)]
struct ClassifyReport {
    version: String,
    preset: String,
    seed: u64,
    budget: usize,
    word: String,
    resolved: String,
    unipotent: bool,
    order: u64,
    jordan_type: Option<String>,
    label: Option<String>,
}

/// Multiplicative order by accumulation; element orders in these finite
/// groups are tiny, the cap only guards against misuse.
fn element_order(m: &FieldMatrix) -> Result<u64, CliError> {
    let id = FieldMatrix::identity(m.prime(), m.nrows());
    let mut acc = m.clone();
    for k in 1..=1_000_000u64 {
        if acc == id {
            return Ok(k);
        }
        acc = acc.mat_mul(m).map_err(unirep::Error::from)?;
    }
    Err(CliError::Assertion("element order exceeds 10^6".into()))
}

pub fn run(cfg: &RunConfig, word_arg: &str) -> Result<(), CliError> {
    let preset = presets::by_name(&cfg.preset)?;
    let word = preset.resolve_word(word_arg)?;
    let m = preset.rep().evaluate_word(&word)?;
    let unipotent = is_unipotent(&m)?;
    let (order, jt, label) = if unipotent {
        let jt = jordan_type(&m)?;
        let label = hesselink_label(&m, preset.form())?;
        (unipotent_order(&m)?, Some(jt), Some(label))
    } else {
        (element_order(&m)?, None, None)
    };

    println!("preset:      {}", preset.name());
    println!("word:        {word_arg}");
    if word_arg != word.to_string() {
        println!("resolved:    {word}");
    }
    println!("unipotent:   {}", if unipotent { "yes" } else { "no" });
    println!("order:       {order}");
    match (&jt, &label) {
        (Some(t), Some(l)) => {
            println!("jordan type: {t}");
            println!("class label: {l}");
        }
        _ => println!("jordan type: -  (not unipotent)"),
    }

    let report = ClassifyReport {
        version: VERSION.to_string(),
        preset: preset.name().to_string(),
        seed: cfg.seed,
        budget: cfg.budget,
        word: word_arg.to_string(),
        resolved: word.to_string(),
        unipotent,
        order,
        jordan_type: jt.map(|t| t.to_string()),
        label: label.map(|l| l.to_string()),
    };
    emit_json(cfg.out.as_deref(), &report)
}
