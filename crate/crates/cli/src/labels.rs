//! `labels`: random-search the unipotent class labels of a preset group
//! and dump each with its witness word.

use crate::config::RunConfig;
use crate::{emit_json, CliError, VERSION};
use serde::Serialize;
use std::time::Instant;
use unirep::symplectic::{collect_labels, SearchParams};

#[derive(Serialize)]
struct LabelEntry {
    label: String,
    witness: String,
    found_after: u64,
}

#[derive(Serialize)]
struct LabelsReport {
    version: String,
    preset: String,
    seed: u64,
    workers: usize,
    saturation: usize,
    words_tried: u64,
    entries: Vec<LabelEntry>,
    elapsed_ms: u64,
}

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let preset = unirep::presets::by_name(&cfg.preset)?;
    let started = Instant::now();
    let params = SearchParams {
        saturation_window: cfg.saturation,
        seed: cfg.seed,
        workers: cfg.workers,
        ..SearchParams::default()
    };
    let collection = collect_labels(preset.rep(), preset.form(), &params)?;

    let mut entries: Vec<LabelEntry> = collection
        .entries
        .iter()
        .map(|e| LabelEntry {
            label: e.label.to_string(),
            witness: e.word.clone(),
            found_after: e.letters,
        })
        .collect();
    entries.sort_by(|a, b| a.label.cmp(&b.label));

    println!(
        "{} labels after {} words (saturation window {})",
        entries.len(),
        collection.words_tried,
        cfg.saturation
    );
    let label_width = entries.iter().map(|e| e.label.len()).max().unwrap_or(5);
    println!("{:<label_width$} | witness", "label");
    for e in &entries {
        let witness = if e.witness.is_empty() { "(identity)" } else { &e.witness };
        println!("{:<label_width$} | {witness}", e.label);
    }

    let report = LabelsReport {
        version: VERSION.to_string(),
        preset: preset.name().to_string(),
        seed: cfg.seed,
        workers: cfg.workers,
        saturation: cfg.saturation,
        words_tried: collection.words_tried,
        entries,
        elapsed_ms: started.elapsed().as_millis() as u64,
    };
    emit_json(cfg.out.as_deref(), &report)
}
