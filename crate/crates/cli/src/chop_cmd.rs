//! `chop`: split a module into composition factors with multiplicities.
//! The module comes either from a build expression over the preset's
//! natural module or from a representation file.

use crate::config::RunConfig;
use crate::{emit_json, expr, CliError, VERSION};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::Path;
use std::time::Instant;
use unirep::meataxe::{chop, ChopReport};
use unirep::{MatRep, MeataxeConfig};

#[derive(Serialize)]
struct ChopCommandReport {
    version: String,
    preset: String,
    seed: u64,
    budget: usize,
    input: String,
    report: ChopReport,
}

pub fn run(
    cfg: &RunConfig,
    expr_arg: Option<&str>,
    module_path: Option<&Path>,
) -> Result<(), CliError> {
    let (rep, input) = match (expr_arg, module_path) {
        (Some(text), None) => {
            let preset = unirep::presets::by_name(&cfg.preset)?;
            let ast = expr::parse(text)?;
            (expr::build(&ast, preset.rep())?, text.to_string())
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            (
                MatRep::parse_text(&text)?,
                path.display().to_string(),
            )
        }
        (None, None) => {
            return Err(CliError::Parse(
                "provide a module via --expr or --module".into(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap rejects --expr with --module"),
    };
    if rep.dim() > cfg.budget {
        return Err(unirep::Error::BudgetExceeded {
            needed: rep.dim(),
            budget: cfg.budget,
        }
        .into());
    }

    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let factors = chop(&rep, &mut rng, &MeataxeConfig::default())?;
    let elapsed = started.elapsed().as_millis() as u64;

    println!("module:  {input}  (dim {}, p = {})", rep.dim(), rep.prime());
    for (dim, mult) in factors.dimension_profile() {
        println!("factor:  dim {dim} x{mult}");
    }
    println!("total:   {} over {} factors", factors.total_dimension(), {
        factors.dimension_profile().iter().map(|(_, m)| m).sum::<usize>()
    });

    let report = ChopCommandReport {
        version: VERSION.to_string(),
        preset: cfg.preset.clone(),
        seed: cfg.seed,
        budget: cfg.budget,
        input,
        report: factors.report(rep.dim(), cfg.seed, elapsed),
    };
    emit_json(cfg.out.as_deref(), &report)
}
