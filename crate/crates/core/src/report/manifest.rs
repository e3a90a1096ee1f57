//! Reproducibility manifest written next to `results.csv`.
//!
//! JSON object with the fields of [`Manifest`]. `spec` is the full sweep
//! spec in config-file form, so `ppa sweep --manifest <file>` re-runs the
//! identical grid.

use std::path::Path;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::benchmarks::FunctionId;
use crate::error::{io_err, PpaError, Result};
use crate::experiment::{CellResult, Factor, SweepSpec};

pub const TOOL_NAME: &str = "ppa";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestCell {
    pub function: FunctionId,
    pub factor: Factor,
    pub median: f64,
    pub seeds: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub created_unix_seconds: u64,
    pub elapsed_seconds: f64,
    pub base_seed: u64,
    pub cell_count: usize,
    pub spec: SweepSpec,
    pub cells: Vec<ManifestCell>,
}

impl Manifest {
    pub fn new(spec: &SweepSpec, results: &[CellResult], elapsed: Duration) -> Self {
        let created = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            created_unix_seconds: created,
            elapsed_seconds: elapsed.as_secs_f64(),
            base_seed: spec.base_seed,
            cell_count: results.len(),
            spec: spec.clone(),
            cells: results
                .iter()
                .map(|c| ManifestCell {
                    function: c.function,
                    factor: c.factor,
                    median: c.median,
                    seeds: c.seeds.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest is always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: Manifest = serde_json::from_str(text).map_err(|e| PpaError::InvalidConfig(format!("manifest: {e}")))?;
        m.spec.validate()?;
        Ok(m)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(io_err(path))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        Self::from_json(&text)
    }
}

/// Writes the manifest for a finished sweep.
pub fn write_manifest(spec: &SweepSpec, results: &[CellResult], elapsed: Duration, path: &Path) -> Result<()> {
    Manifest::new(spec, results, elapsed).write(path)
}
