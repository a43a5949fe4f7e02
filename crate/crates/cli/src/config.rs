//! Settings from an optional TOML file, overridden by command-line flags.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use crate::output::Format;

/// Keys accepted in the `--config` file. All optional.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub max_rounds: Option<u64>,
    pub rounds: Option<u64>,
    pub trials: Option<u64>,
    pub restarts: Option<usize>,
    pub threads: Option<usize>,
    pub format: Option<Format>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let cfg: FileConfig = toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        if let Some(tol) = cfg.tol {
            check_tol(tol)?;
        }
        Ok(cfg)
    }
}

pub fn check_tol(tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol.is_finite()) {
        bail!("tol must be positive, got {tol}");
    }
    Ok(tol)
}
