//! The plant propagation generational loop and its formulas.
//!
//! Each generation normalizes the population's objective values so the best
//! individual sits at `z = 1` and the worst at `z = 0`, maps `z` through a
//! tanh sigmoid whose steepness `s` can grow with the evaluation count, and
//! lets every individual spawn offspring: fit individuals get many children
//! with small mutations, unfit ones few children with large mutations. The
//! best `pop_size` of parents and children survive.

use serde::{Deserialize, Serialize};

use crate::error::{PpaError, Result};
use crate::rng::RngState;

/// Box constraints, one `[lower, upper]` interval per dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(PpaError::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(PpaError::InvalidConfig("bounds need at least one dimension".into()));
        }
        for (dim, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) || !lo.is_finite() || !hi.is_finite() {
                return Err(PpaError::InvalidBounds {
                    dim,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval in every one of `dim` dimensions.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| lo <= v && v <= hi)
    }
}

/// A point in the search domain with its cached objective value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub position: Vec<f64>,
    pub objective: f64,
}

/// Anything the optimizer can minimize over a box.
pub trait Objective {
    fn bounds(&self) -> &Bounds;
    fn evaluate(&self, x: &[f64]) -> Result<f64>;
}

/// How the sigmoid steepness evolves over a run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SteepeningSchedule {
    /// `s = 1` throughout: the seminal algorithm.
    Vanilla,
    /// `s = evals / factor + 1`.
    Linear { factor: f64 },
}

impl SteepeningSchedule {
    pub fn linear(factor: f64) -> Result<Self> {
        if factor > 0.0 && !factor.is_nan() {
            Ok(Self::Linear { factor })
        } else {
            Err(PpaError::InvalidConfig(format!(
                "factor must be positive, got {factor}"
            )))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PpaConfig {
    pub pop_size: usize,
    pub n_max: usize,
    pub budget: u64,
    pub schedule: SteepeningSchedule,
}

impl Default for PpaConfig {
    fn default() -> Self {
        Self {
            pop_size: 30,
            n_max: 5,
            budget: 10_000,
            schedule: SteepeningSchedule::Vanilla,
        }
    }
}

impl PpaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pop_size == 0 {
            return Err(PpaError::InvalidConfig("pop_size must be at least 1".into()));
        }
        if self.n_max == 0 {
            return Err(PpaError::InvalidConfig("n_max must be at least 1".into()));
        }
        if self.budget < self.pop_size as u64 {
            return Err(PpaError::InvalidConfig(format!(
                "budget {} is smaller than pop_size {}",
                self.budget, self.pop_size
            )));
        }
        if let SteepeningSchedule::Linear { factor } = self.schedule {
            SteepeningSchedule::linear(factor)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub evaluation: u64,
    pub best_so_far: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub best_value: f64,
    pub best_point: Vec<f64>,
    /// Best-so-far at every improvement, closed by an entry at `evaluations_used`.
    pub trajectory: Vec<TrajectoryPoint>,
    pub evaluations_used: u64,
    pub seed: u64,
}

/// Snapshot handed to run observers after initialization and after every
/// selection step.
#[derive(Debug)]
pub struct GenerationView<'a> {
    pub generation: u64,
    pub evaluations: u64,
    pub steepness: f64,
    pub population: &'a [Individual],
    pub offspring_count: usize,
}

/// Maps objective values onto `[0, 1]` with the best (lowest) at 1 and the
/// worst at 0. A population with no spread maps to 0.5 everywhere.
pub fn normalize(objectives: &[f64]) -> Result<Vec<f64>> {
    if objectives.is_empty() {
        return Err(PpaError::EmptyPopulation);
    }
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &f in objectives {
        if !f.is_finite() {
            return Err(PpaError::NonFiniteObjective { value: f });
        }
        min = min.min(f);
        max = max.max(f);
    }
    if max == min {
        return Ok(vec![0.5; objectives.len()]);
    }
    let range = max - min;
    if !range.is_finite() {
        // Spread beyond f64 range: rescale both ends before differencing.
        let (lo, hi) = (min / 2.0, max / 2.0);
        return Ok(objectives.iter().map(|&f| (hi - f / 2.0) / (hi - lo)).collect());
    }
    Ok(objectives.iter().map(|&f| (max - f) / range).collect())
}

pub fn steepness(evals: u64, schedule: SteepeningSchedule) -> f64 {
    match schedule {
        SteepeningSchedule::Vanilla => 1.0,
        SteepeningSchedule::Linear { factor } => evals as f64 / factor + 1.0,
    }
}

/// `F = (tanh(4 s z - 2 s) + 1) / 2`.
#[inline]
pub fn fitness(z: f64, s: f64) -> f64 {
    0.5 * ((4.0 * s * z - 2.0 * s).tanh() + 1.0)
}

/// `max(1, ceil(n_max * F * r))`, never above `n_max`.
#[inline]
pub fn offspring_count(fitness: f64, r: f64, n_max: usize) -> usize {
    let raw = (n_max as f64 * fitness * r).ceil();
    (raw as usize).clamp(1, n_max)
}

/// Perturbs every coordinate by `(b - a) * 2 (r - 0.5) (1 - F)` with a fresh
/// `r` per dimension, then clamps back into the box.
pub fn mutate(parent: &[f64], fitness: f64, bounds: &Bounds, rng: &mut RngState) -> Vec<f64> {
    let spread = 1.0 - fitness;
    parent
        .iter()
        .zip(bounds.lower.iter().zip(&bounds.upper))
        .map(|(&x, (&lo, &hi))| perturb(x, lo, hi, rng.next_uniform(), spread))
        .collect()
}

/// One coordinate of [`mutate`] for a given draw `r` and `spread = 1 - F`.
#[inline]
pub fn perturb(x: f64, lower: f64, upper: f64, r: f64, spread: f64) -> f64 {
    let step = (upper - lower) * 2.0 * (r - 0.5) * spread;
    (x + step).clamp(lower, upper)
}

/// Keeps the `pop_size` lowest-objective individuals of `parents ++ offspring`.
/// Ties keep their pool order, so parents win over equal children.
pub fn select_survivors(
    parents: Vec<Individual>,
    offspring: Vec<Individual>,
    pop_size: usize,
) -> Result<Vec<Individual>> {
    let pool = parents.len() + offspring.len();
    if pool < pop_size {
        return Err(PpaError::PoolTooSmall { pool, pop_size });
    }
    let mut all = parents;
    all.extend(offspring);
    all.sort_by(|a, b| a.objective.total_cmp(&b.objective));
    all.truncate(pop_size);
    Ok(all)
}

pub fn run_ppa(config: &PpaConfig, objective: &impl Objective, seed: u64) -> Result<RunResult> {
    run_ppa_observed(config, objective, seed, |_| {})
}

/// Same as [`run_ppa`], calling `observe` with the population after
/// initialization and after each selection.
pub fn run_ppa_observed(
    config: &PpaConfig,
    objective: &impl Objective,
    seed: u64,
    mut observe: impl FnMut(&GenerationView<'_>),
) -> Result<RunResult> {
    config.validate()?;
    let bounds = objective.bounds();
    let mut rng = RngState::from_seed(seed);
    let mut tracker = BestTracker::default();
    let mut evals: u64 = 0;

    let evaluate = |x: Vec<f64>, evals: &mut u64, tracker: &mut BestTracker| -> Result<Individual> {
        let f = objective.evaluate(&x)?;
        if !f.is_finite() {
            return Err(PpaError::NonFiniteObjective { value: f });
        }
        *evals += 1;
        tracker.record(*evals, f, &x);
        Ok(Individual {
            position: x,
            objective: f,
        })
    };

    let mut population = Vec::with_capacity(config.pop_size);
    for _ in 0..config.pop_size {
        let x: Vec<f64> = bounds
            .lower
            .iter()
            .zip(&bounds.upper)
            .map(|(&lo, &hi)| (lo + rng.next_uniform() * (hi - lo)).min(hi))
            .collect();
        population.push(evaluate(x, &mut evals, &mut tracker)?);
    }
    observe(&GenerationView {
        generation: 0,
        evaluations: evals,
        steepness: steepness(0, config.schedule),
        population: &population,
        offspring_count: 0,
    });

    let mut generation = 0;
    while evals < config.budget {
        generation += 1;
        let s = steepness(evals, config.schedule);
        let objectives: Vec<f64> = population.iter().map(|p| p.objective).collect();
        let fitnesses: Vec<f64> = normalize(&objectives)?.into_iter().map(|z| fitness(z, s)).collect();

        let mut offspring = Vec::new();
        'parents: for (parent, &f) in population.iter().zip(&fitnesses) {
            if evals >= config.budget {
                break;
            }
            let n = offspring_count(f, rng.next_uniform(), config.n_max);
            for _ in 0..n {
                if evals >= config.budget {
                    break 'parents;
                }
                let child = mutate(&parent.position, f, bounds, &mut rng);
                offspring.push(evaluate(child, &mut evals, &mut tracker)?);
            }
        }

        let produced = offspring.len();
        population = select_survivors(population, offspring, config.pop_size)?;
        observe(&GenerationView {
            generation,
            evaluations: evals,
            steepness: s,
            population: &population,
            offspring_count: produced,
        });
    }

    Ok(tracker.finish(evals, seed))
}

#[derive(Default)]
struct BestTracker {
    best_value: f64,
    best_point: Vec<f64>,
    trajectory: Vec<TrajectoryPoint>,
}

impl BestTracker {
    fn record(&mut self, evaluation: u64, value: f64, point: &[f64]) {
        if self.trajectory.is_empty() || value < self.best_value {
            self.best_value = value;
            self.best_point.clear();
            self.best_point.extend_from_slice(point);
            self.trajectory.push(TrajectoryPoint {
                evaluation,
                best_so_far: value,
            });
        }
    }

    fn finish(mut self, evaluations_used: u64, seed: u64) -> RunResult {
        if self.trajectory.last().map(|p| p.evaluation) != Some(evaluations_used) {
            self.trajectory.push(TrajectoryPoint {
                evaluation: evaluations_used,
                best_so_far: self.best_value,
            });
        }
        RunResult {
            best_value: self.best_value,
            best_point: self.best_point,
            trajectory: self.trajectory,
            evaluations_used,
            seed,
        }
    }
}
