//! Factor sweeps: every (function, factor) cell is run `repeats` times from
//! its own derived seed and summarized by the median final value.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::benchmarks::{BenchmarkFunction, FunctionId, DEFAULT_DIMENSION};
use crate::error::{io_err, PpaError, Result};
use crate::propagation::{run_ppa, PpaConfig, SteepeningSchedule};
use crate::rng::derive_sub_seed;

/// One column of the sweep grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Factor {
    Linear(f64),
    Vanilla,
}

impl Factor {
    pub fn schedule(self) -> SteepeningSchedule {
        match self {
            Factor::Linear(factor) => SteepeningSchedule::Linear { factor },
            Factor::Vanilla => SteepeningSchedule::Vanilla,
        }
    }

    /// Sort key placing vanilla after every numeric factor.
    pub fn sort_key(self) -> f64 {
        match self {
            Factor::Linear(v) => v,
            Factor::Vanilla => f64::INFINITY,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Linear(v) => write!(f, "{v}"),
            Factor::Vanilla => f.write_str("vanilla"),
        }
    }
}

impl FromStr for Factor {
    type Err = PpaError;

    /// Accepts a positive number, `vanilla`, or `inf` (the CSV token).
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vanilla" | "inf" => Ok(Factor::Vanilla),
            _ => match s.parse::<f64>() {
                Ok(v) if v > 0.0 && v.is_finite() => Ok(Factor::Linear(v)),
                _ => Err(PpaError::InvalidConfig(format!("invalid factor '{s}'"))),
            },
        }
    }
}

impl Serialize for Factor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Factor::Linear(v) => s.serialize_f64(*v),
            Factor::Vanilla => s.serialize_str("vanilla"),
        }
    }
}

impl<'de> Deserialize<'de> for Factor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Float(f64),
            Text(String),
        }
        let parsed = match Raw::deserialize(d)? {
            Raw::Int(v) => format!("{v}").parse(),
            Raw::Float(v) => format!("{v}").parse(),
            Raw::Text(t) => t.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

fn default_dimension() -> usize {
    DEFAULT_DIMENSION
}

fn default_repeats() -> usize {
    10
}

fn default_budget() -> u64 {
    10_000
}

fn default_pop_size() -> usize {
    30
}

fn default_n_max() -> usize {
    5
}

/// The experiment grid. Serialized as the sweep config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub functions: Vec<FunctionId>,
    /// Dimension of the scalable functions; the planar ones are always 2-D.
    #[serde(default = "default_dimension")]
    pub dimension: usize,
    pub factors: Vec<Factor>,
    #[serde(default = "default_repeats")]
    pub repeats: usize,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default = "default_pop_size")]
    pub pop_size: usize,
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    #[serde(default)]
    pub base_seed: u64,
}

/// `100, 200, ..., 4000`.
pub fn published_factor_grid() -> Vec<Factor> {
    (1..=40).map(|k| Factor::Linear(100.0 * k as f64)).collect()
}

/// Nine scalable functions at n = 2 over the 40-factor grid: 360 cells.
pub fn default_sweep_a() -> SweepSpec {
    SweepSpec {
        functions: FunctionId::SCALABLE.to_vec(),
        dimension: DEFAULT_DIMENSION,
        factors: published_factor_grid(),
        repeats: 10,
        budget: 10_000,
        pop_size: 30,
        n_max: 5,
        base_seed: 0,
    }
}

/// Five planar functions over the 40-factor grid: 200 cells.
pub fn default_sweep_b() -> SweepSpec {
    SweepSpec {
        functions: FunctionId::PLANAR.to_vec(),
        ..default_sweep_a()
    }
}

impl SweepSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: SweepSpec = toml::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    /// Appends the schedule-off column if it is not already present.
    pub fn with_vanilla(mut self) -> Self {
        if !self.factors.contains(&Factor::Vanilla) {
            self.factors.push(Factor::Vanilla);
        }
        self
    }

    pub fn cell_count(&self) -> usize {
        self.functions.len() * self.factors.len()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(PpaError::InvalidConfig(msg));
        if self.functions.is_empty() {
            return bad("functions must not be empty".into());
        }
        if self.factors.is_empty() {
            return bad("factors must not be empty".into());
        }
        if self.repeats == 0 {
            return bad("repeats must be at least 1".into());
        }
        let mut seen_fn = self.functions.clone();
        seen_fn.sort();
        seen_fn.dedup();
        if seen_fn.len() != self.functions.len() {
            return bad("functions contain duplicates".into());
        }
        let mut last = f64::NEG_INFINITY;
        let mut vanilla = 0;
        for f in &self.factors {
            match *f {
                Factor::Linear(v) => {
                    if !(v > 0.0 && v.is_finite()) {
                        return bad(format!("factor {v} must be positive"));
                    }
                    if v <= last {
                        return bad("numeric factors must be strictly increasing".into());
                    }
                    last = v;
                }
                Factor::Vanilla => vanilla += 1,
            }
        }
        if vanilla > 1 {
            return bad("vanilla may appear at most once".into());
        }
        for &id in &self.functions {
            self.benchmark(id)?;
        }
        self.ppa_config(Factor::Vanilla).validate()
    }

    pub fn benchmark(&self, id: FunctionId) -> Result<BenchmarkFunction> {
        let dim = if id.is_scalable() { self.dimension } else { 2 };
        BenchmarkFunction::new(id, dim)
    }

    pub fn ppa_config(&self, factor: Factor) -> PpaConfig {
        PpaConfig {
            pop_size: self.pop_size,
            n_max: self.n_max,
            budget: self.budget,
            schedule: factor.schedule(),
        }
    }

    /// Seeds for every run of cell `(function_index, factor_index)`.
    pub fn cell_seeds(&self, function_index: usize, factor_index: usize) -> Vec<u64> {
        (0..self.repeats)
            .map(|r| derive_sub_seed(self.base_seed, function_index as u64, factor_index as u64, r as u64))
            .collect()
    }

    /// Fails on the first repeated sub-seed anywhere in the grid.
    pub fn check_seed_disjointness(&self) -> Result<()> {
        let mut seen: HashMap<u64, (usize, usize, usize)> = HashMap::with_capacity(self.cell_count() * self.repeats);
        for fi in 0..self.functions.len() {
            for ki in 0..self.factors.len() {
                for (r, seed) in self.cell_seeds(fi, ki).into_iter().enumerate() {
                    if let Some(&first) = seen.get(&seed) {
                        return Err(PpaError::SeedCollision {
                            first,
                            second: (fi, ki, r),
                        });
                    }
                    seen.insert(seed, (fi, ki, r));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub function: FunctionId,
    pub factor: Factor,
    pub finals: Vec<f64>,
    pub median: f64,
    pub seeds: Vec<u64>,
}

/// Emitted once per finished cell.
#[derive(Clone, Debug)]
pub struct CellProgress {
    pub function: FunctionId,
    pub factor: Factor,
    pub median: f64,
    pub elapsed: Duration,
    pub completed: usize,
    pub total: usize,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SweepOptions {
    /// Worker cap; `None` uses all available cores. `Some(1)` (or a build
    /// without the `parallel` feature) runs cells sequentially.
    pub jobs: Option<usize>,
}

/// Exact median; even-length samples average the two middle values.
pub fn median(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(PpaError::EmptySample);
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Ok(if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    })
}

/// Runs every repeat of one cell sequentially.
pub fn run_cell(spec: &SweepSpec, function_index: usize, factor_index: usize) -> Result<CellResult> {
    let function = spec.functions[function_index];
    let factor = spec.factors[factor_index];
    let objective = spec.benchmark(function)?;
    let config = spec.ppa_config(factor);
    let seeds = spec.cell_seeds(function_index, factor_index);
    let finals = seeds
        .iter()
        .map(|&seed| run_ppa(&config, &objective, seed).map(|r| r.best_value))
        .collect::<Result<Vec<_>>>()?;
    Ok(CellResult {
        function,
        factor,
        median: median(&finals)?,
        finals,
        seeds,
    })
}

/// Runs the whole grid. Results come back in `(function, factor)` spec order
/// regardless of how cells were scheduled.
pub fn run_sweep(
    spec: &SweepSpec,
    options: &SweepOptions,
    progress: &(dyn Fn(&CellProgress) + Sync),
) -> Result<Vec<CellResult>> {
    spec.validate()?;
    spec.check_seed_disjointness()?;

    let cells: Vec<(usize, usize)> = (0..spec.functions.len())
        .flat_map(|fi| (0..spec.factors.len()).map(move |ki| (fi, ki)))
        .collect();
    let total = cells.len();
    let completed = AtomicUsize::new(0);
    let work = |&(fi, ki): &(usize, usize)| -> Result<CellResult> {
        let start = Instant::now();
        let cell = run_cell(spec, fi, ki)?;
        progress(&CellProgress {
            function: cell.function,
            factor: cell.factor,
            median: cell.median,
            elapsed: start.elapsed(),
            completed: completed.fetch_add(1, Ordering::SeqCst) + 1,
            total,
        });
        Ok(cell)
    };

    #[cfg(feature = "parallel")]
    if options.jobs != Some(1) {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs.unwrap_or(0))
            .build()
            .map_err(|e| PpaError::InvalidConfig(format!("thread pool: {e}")))?;
        return pool.install(|| cells.par_iter().map(work).collect());
    }
    #[cfg(not(feature = "parallel"))]
    let _ = options;

    cells.iter().map(work).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> SweepSpec {
        SweepSpec {
            functions: vec![FunctionId::Sphere],
            dimension: 2,
            factors: vec![Factor::Linear(100.0), Factor::Linear(1000.0)],
            repeats: 3,
            budget: 300,
            pop_size: 10,
            n_max: 5,
            base_seed: 42,
        }
    }

    #[test]
    fn median_examples() {
        assert_eq!(median(&[5.0, 1.0, 3.0]).unwrap(), 3.0);
        assert_eq!(median(&[1.0, 2.0, 3.0, 4.0]).unwrap(), 2.5);
        assert_eq!(median(&[7.0]).unwrap(), 7.0);
        let ten: Vec<f64> = (0..10).rev().map(f64::from).collect();
        assert_eq!(median(&ten).unwrap(), 4.5);
        assert!(matches!(median(&[]), Err(PpaError::EmptySample)));
    }

    #[test]
    fn preset_sizes() {
        let a = default_sweep_a();
        assert_eq!(a.cell_count(), 360);
        assert_eq!(a.cell_count() * a.repeats, 3600);
        assert_eq!((a.cell_count() * a.repeats) as u64 * a.budget, 36_000_000);
        let b = default_sweep_b();
        assert_eq!(b.cell_count(), 200);
        assert_eq!(b.repeats, 10);
        assert_eq!(b.budget, 10_000);
        assert_eq!(a.clone().with_vanilla().cell_count(), 369);
        assert!(a.validate().is_ok() && b.validate().is_ok());
    }

    #[test]
    fn tiny_grid_shape() {
        let out = run_sweep(&tiny(), &SweepOptions::default(), &|_| {}).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|c| c.finals.len() == 3 && c.seeds.len() == 3));
        assert_eq!(out[0].factor, Factor::Linear(100.0));
    }

    #[test]
    fn progress_fires_once_per_cell() {
        let count = AtomicUsize::new(0);
        run_sweep(&tiny(), &SweepOptions { jobs: Some(1) }, &|p| {
            assert_eq!(p.total, 2);
            count.fetch_add(1, Ordering::SeqCst);
        })
        .unwrap();
        assert_eq!(count.load(Ordering::SeqCst), 2);
    }

    #[test]
    fn validation_errors() {
        let mut s = tiny();
        s.factors = vec![Factor::Linear(200.0), Factor::Linear(100.0)];
        assert!(s.validate().is_err());
        let mut s = tiny();
        s.repeats = 0;
        assert!(s.validate().is_err());
        let mut s = tiny();
        s.factors.clear();
        assert!(s.validate().is_err());
        let mut s = tiny();
        s.factors = vec![Factor::Vanilla, Factor::Vanilla];
        assert!(s.validate().is_err());
        let mut s = tiny();
        s.budget = 5;
        assert!(s.validate().is_err());
    }

    #[test]
    fn config_file_roundtrip_and_unknown_function() {
        let text = r#"
            functions = ["sphere", "easom"]
            factors = [100, 250.5, "vanilla"]
            repeats = 3
            budget = 500
            pop_size = 10
            n_max = 4
            base_seed = 9
        "#;
        let spec = SweepSpec::from_toml(text).unwrap();
        assert_eq!(
            spec.factors,
            vec![Factor::Linear(100.0), Factor::Linear(250.5), Factor::Vanilla]
        );
        assert_eq!(spec.dimension, 2);
        assert_eq!(SweepSpec::from_toml(&spec.to_toml().unwrap()).unwrap(), spec);

        let err = SweepSpec::from_toml(&text.replace("easom", "nosuch")).unwrap_err();
        assert!(err.to_string().contains("nosuch"), "{err}");
        assert!(SweepSpec::from_toml(&format!("{text}\nbogus = 1")).is_err());
        assert!(SweepSpec::from_toml(&text.replace("100,", "-100,")).is_err());
    }

    #[test]
    fn factor_tokens() {
        assert_eq!("inf".parse::<Factor>().unwrap(), Factor::Vanilla);
        assert_eq!("vanilla".parse::<Factor>().unwrap(), Factor::Vanilla);
        assert_eq!("1500".parse::<Factor>().unwrap(), Factor::Linear(1500.0));
        assert!("0".parse::<Factor>().is_err());
        assert!("abc".parse::<Factor>().is_err());
    }
}
