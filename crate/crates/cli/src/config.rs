//! Run configuration: defaults, overlaid by a flat key=value config
//! file, overlaid by explicit command-line flags (flags win).

use crate::{CliError, CommonOpts};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub preset: String,
    pub seed: u64,
    pub workers: usize,
    pub budget: usize,
    pub saturation: usize,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            preset: "sp10".to_string(),
            seed: 0,
            workers: 1,
            budget: 32_000,
            saturation: 20_000,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn resolve(file: Option<&Path>, flags: &CommonOpts) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)?;
            cfg.apply_file(&text)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        }
        if let Some(p) = &flags.preset {
            cfg.preset = p.clone();
        }
        if let Some(s) = flags.seed {
            cfg.seed = s;
        }
        if let Some(w) = flags.workers {
            cfg.workers = w;
        }
        if let Some(b) = flags.budget {
            cfg.budget = b;
        }
        if let Some(s) = flags.saturation {
            cfg.saturation = s;
        }
        if let Some(o) = &flags.out {
            cfg.out = Some(o.clone());
        }
        if cfg.workers == 0 {
            return Err(CliError::Config("workers must be at least 1".into()));
        }
        Ok(cfg)
    }

    fn apply_file(&mut self, text: &str) -> Result<(), String> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value", lineno + 1))?;
            let key = key.trim();
            let value = value.trim();
            let bad = |e: &dyn std::fmt::Display| format!("line {}: {key}: {e}", lineno + 1);
            match key {
                "preset" => self.preset = value.to_string(),
                "seed" => self.seed = value.parse().map_err(|e| bad(&e))?,
                "workers" => self.workers = value.parse().map_err(|e| bad(&e))?,
                "budget" => self.budget = value.parse().map_err(|e| bad(&e))?,
                "saturation" => self.saturation = value.parse().map_err(|e| bad(&e))?,
                "out" => self.out = Some(PathBuf::from(value)),
                other => return Err(format!("line {}: unknown key '{other}'", lineno + 1)),
            }
        }
        Ok(())
    }
}
