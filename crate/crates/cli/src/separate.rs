//! `separate`: collect class labels by random word search, compute each
//! witness's Jordan types on every fundamental irreducible, and report
//! the label pairs those type vectors fail to separate.

use crate::config::RunConfig;
use crate::{emit_json, CliError, VERSION};
use serde::Serialize;
use std::time::Instant;
use unirep::jordan::jordan_type;
use unirep::symplectic::{collect_labels, SearchParams};
use unirep::{DimensionTable, GroupWord, ModuleBuilder, Weight};

#[derive(Serialize)]
struct LabelRow {
    label: String,
    witness: String,
    types: Vec<String>,
}

#[derive(Serialize)]
struct SeparateReport {
    version: String,
    preset: String,
    seed: u64,
    workers: usize,
    budget: usize,
    saturation: usize,
    words_tried: u64,
    labels: Vec<LabelRow>,
    unseparated_pairs: Vec<[String; 2]>,
    elapsed_ms: u64,
}

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let preset = unirep::presets::by_name(&cfg.preset)?;
    let rank = preset.rank();
    let started = Instant::now();

    let params = SearchParams {
        saturation_window: cfg.saturation,
        seed: cfg.seed,
        workers: cfg.workers,
        ..SearchParams::default()
    };
    let collection = collect_labels(preset.rep(), preset.form(), &params)?;

    // The builder is only needed for rank >= 2; in rank 1 the single
    // fundamental module is the natural one.
    let builder = (rank >= 2).then(|| {
        ModuleBuilder::new(
            preset.rep().clone(),
            DimensionTable::for_rank(rank),
            cfg.seed,
            cfg.budget,
        )
    });

    let mut rows: Vec<LabelRow> = Vec::new();
    for entry in &collection.entries {
        let word = GroupWord::parse(&entry.word)?;
        let mut types = Vec::with_capacity(rank);
        for i in 1..=rank {
            let t = match &builder {
                Some(b) => b.jordan_on_weight(&Weight::fundamental(rank, i), &word)?,
                None => jordan_type(&preset.rep().evaluate_word(&word)?)?,
            };
            types.push(t.to_string());
        }
        rows.push(LabelRow {
            label: entry.label.to_string(),
            witness: entry.word.clone(),
            types,
        });
    }
    rows.sort_by(|a, b| a.label.cmp(&b.label));

    let mut pairs: Vec<[String; 2]> = Vec::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if rows[i].types == rows[j].types {
                pairs.push([rows[i].label.clone(), rows[j].label.clone()]);
            }
        }
    }

    let label_width = rows.iter().map(|r| r.label.len()).max().unwrap_or(5);
    println!(
        "{} labels found after {} words (saturation window {})",
        rows.len(),
        collection.words_tried,
        cfg.saturation
    );
    println!(
        "{:<label_width$} | types on the {} fundamental irreducibles",
        "label", rank
    );
    for r in &rows {
        println!("{:<label_width$} | {}", r.label, r.types.join("  "));
    }
    if pairs.is_empty() {
        println!("unseparated pairs: none");
    } else {
        println!("unseparated pairs: {}", pairs.len());
        for [a, b] in &pairs {
            println!("  {a}  ~  {b}");
        }
    }

    let report = SeparateReport {
        version: VERSION.to_string(),
        preset: preset.name().to_string(),
        seed: cfg.seed,
        workers: cfg.workers,
        budget: cfg.budget,
        saturation: cfg.saturation,
        words_tried: collection.words_tried,
        labels: rows,
        unseparated_pairs: pairs,
        elapsed_ms: started.elapsed().as_millis() as u64,
    };
    emit_json(cfg.out.as_deref(), &report)
}
