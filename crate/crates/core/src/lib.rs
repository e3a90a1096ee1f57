//! Plant propagation algorithm (PPA) with a deterministic steepening schedule
//! for its sigmoid fitness transform, fourteen benchmark objectives, and a
//! harness that sweeps the schedule's factor and reports per-cell medians.
//!
//! ```
//! use ppa::{run_ppa, BenchmarkFunction, FunctionId, PpaConfig, SteepeningSchedule};
//!
//! let sphere = BenchmarkFunction::new(FunctionId::Sphere, 2).unwrap();
//! let config = PpaConfig {
//!     schedule: SteepeningSchedule::linear(900.0).unwrap(),
//!     ..PpaConfig::default()
//! };
//! let result = run_ppa(&config, &sphere, 1).unwrap();
//! assert_eq!(result.evaluations_used, 10_000);
//! assert!(result.best_value < 1e-6);
//! ```

pub mod benchmarks;
pub mod error;
pub mod experiment;
pub mod propagation;
pub mod report;
pub mod rng;

pub use benchmarks::{list_functions, BenchmarkFunction, FunctionId, DEFAULT_DIMENSION};
pub use error::{PpaError, Result};
pub use experiment::{
    default_sweep_a, default_sweep_b, median, run_cell, run_sweep, CellProgress, CellResult, Factor, SweepOptions,
    SweepSpec,
};
pub use propagation::{
    fitness, mutate, normalize, offspring_count, run_ppa, run_ppa_observed, select_survivors, steepness, Bounds,
    GenerationView, Individual, Objective, PpaConfig, RunResult, SteepeningSchedule, TrajectoryPoint,
};
pub use rng::{derive_sub_seed, RngState};
