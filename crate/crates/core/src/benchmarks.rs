//! Benchmark objectives with their domains and known global optima.
//!
//! | id | formula | domain | optimum |
//! |----|---------|--------|---------|
//! | `sphere` | `Σ x_i²` | `[-5.12, 5.12]^n` | 0 at 0 |
//! | `cigar` | `x_1² + 10⁶ Σ_{i≥2} x_i²` | `[-10, 10]^n` | 0 at 0 |
//! | `ellipse` | `Σ 10^{6(i-1)/(n-1)} x_i²` | `[-10, 10]^n` | 0 at 0 |
//! | `tablet` | `10⁶ x_1² + Σ_{i≥2} x_i²` | `[-10, 10]^n` | 0 at 0 |
//! | `griewank` | `1 + Σ x_i²/4000 - Π cos(x_i/√i)` | `[-600, 600]^n` | 0 at 0 |
//! | `rosenbrock` | `Σ 100(x_{i+1} - x_i²)² + (1 - x_i)²` | `[-5, 10]^n` | 0 at 1 |
//! | `ackley` | `-20 e^{-0.2√(Σx²/n)} - e^{Σcos(2πx)/n} + 20 + e` | `[-32.768, 32.768]^n` | 0 at 0 |
//! | `rastrigin` | `10n + Σ (x_i² - 10 cos 2πx_i)` | `[-5.12, 5.12]^n` | 0 at 0 |
//! | `schwefel` | `418.9829 n - Σ x_i sin √|x_i|` | `[-500, 500]^n` | ≈0 at 420.9687… |
//! | `easom` | `-cos x_1 cos x_2 e^{-((x_1-π)² + (x_2-π)²)}` | `[-100, 100]²` | -1 at (π, π) |
//! | `sixhumpcamel` | `(4 - 2.1x_1² + x_1⁴/3)x_1² + x_1x_2 + (4x_2² - 4)x_2²` | `[-3,3]×[-2,2]` | -1.0316… at ±(0.0898, -0.7127) |
//! | `branin` | `a(x_2 - bx_1² + cx_1 - r)² + s(1-t)cos x_1 + s` | `[-5,10]×[0,15]` | 5/(4π) at (-π, 12.275), (π, 2.275), (3π, 2.475) |
//! | `goldsteinprice` | standard two-factor polynomial | `[-2, 2]²` | 3 at (0, -1) |
//! | `martingaddy` | `(x_1 - x_2)² + ((x_1 + x_2 - 10)/3)²` | `[0, 10]²` | 0 at (5, 5) |
//!
//! The first nine accept any dimension `n ≥ 2`; the last five are fixed at 2.

use std::f64::consts::{E, PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{PpaError, Result};
use crate::propagation::{Bounds, Objective};

pub const DEFAULT_DIMENSION: usize = 2;

const SCHWEFEL_OFFSET: f64 = 418.9829;
const SCHWEFEL_ARGMIN: f64 = 420.968_746_359_982;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionId {
    Sphere,
    Cigar,
    Ellipse,
    Tablet,
    Griewank,
    Rosenbrock,
    Ackley,
    Rastrigin,
    Schwefel,
    Easom,
    #[serde(rename = "sixhumpcamel")]
    SixHumpCamel,
    Branin,
    #[serde(rename = "goldsteinprice")]
    GoldsteinPrice,
    #[serde(rename = "martingaddy")]
    MartinGaddy,
}

impl FunctionId {
    pub const ALL: [FunctionId; 14] = [
        FunctionId::Sphere,
        FunctionId::Cigar,
        FunctionId::Ellipse,
        FunctionId::Tablet,
        FunctionId::Griewank,
        FunctionId::Rosenbrock,
        FunctionId::Ackley,
        FunctionId::Rastrigin,
        FunctionId::Schwefel,
        FunctionId::Easom,
        FunctionId::SixHumpCamel,
        FunctionId::Branin,
        FunctionId::GoldsteinPrice,
        FunctionId::MartinGaddy,
    ];

    /// The nine functions defined for any dimension.
    pub const SCALABLE: [FunctionId; 9] = [
        FunctionId::Sphere,
        FunctionId::Cigar,
        FunctionId::Ellipse,
        FunctionId::Tablet,
        FunctionId::Griewank,
        FunctionId::Rosenbrock,
        FunctionId::Ackley,
        FunctionId::Rastrigin,
        FunctionId::Schwefel,
    ];

    /// The five functions fixed at two dimensions.
    pub const PLANAR: [FunctionId; 5] = [
        FunctionId::Easom,
        FunctionId::SixHumpCamel,
        FunctionId::Branin,
        FunctionId::GoldsteinPrice,
        FunctionId::MartinGaddy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctionId::Sphere => "sphere",
            FunctionId::Cigar => "cigar",
            FunctionId::Ellipse => "ellipse",
            FunctionId::Tablet => "tablet",
            FunctionId::Griewank => "griewank",
            FunctionId::Rosenbrock => "rosenbrock",
            FunctionId::Ackley => "ackley",
            FunctionId::Rastrigin => "rastrigin",
            FunctionId::Schwefel => "schwefel",
            FunctionId::Easom => "easom",
            FunctionId::SixHumpCamel => "sixhumpcamel",
            FunctionId::Branin => "branin",
            FunctionId::GoldsteinPrice => "goldsteinprice",
            FunctionId::MartinGaddy => "martingaddy",
        }
    }

    pub fn is_scalable(self) -> bool {
        Self::SCALABLE.contains(&self)
    }

    /// Whether the function has more than one local minimum in its domain.
    pub fn is_multimodal(self) -> bool {
        matches!(
            self,
            FunctionId::Griewank
                | FunctionId::Ackley
                | FunctionId::Rastrigin
                | FunctionId::Schwefel
                | FunctionId::Easom
                | FunctionId::SixHumpCamel
                | FunctionId::Branin
                | FunctionId::GoldsteinPrice
        )
    }

    fn valid_names() -> String {
        Self::ALL.iter().map(|f| f.name()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionId {
    type Err = PpaError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| PpaError::UnknownFunction {
                name: s.to_owned(),
                valid: Self::valid_names(),
            })
    }
}

/// A benchmark instantiated at a concrete dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkFunction {
    id: FunctionId,
    bounds: Bounds,
    known_optimum_value: f64,
    known_optimum_points: Vec<Vec<f64>>,
}

impl BenchmarkFunction {
    /// Builds `id` at `dimension`. The two-dimensional-only functions reject
    /// anything but 2; the scalable ones need at least 2.
    pub fn new(id: FunctionId, dimension: usize) -> Result<Self> {
        if id.is_scalable() && dimension < 2 {
            return Err(PpaError::InvalidConfig(format!(
                "{id} needs dimension >= 2, got {dimension}"
            )));
        }
        if !id.is_scalable() && dimension != 2 {
            return Err(PpaError::InvalidConfig(format!("{id} is only defined in 2 dimensions")));
        }
        let n = dimension;
        let cube = |lo: f64, hi: f64| Bounds::uniform(n, lo, hi);
        let at = |v: f64| vec![vec![v; n]];
        let (bounds, value, points) = match id {
            FunctionId::Sphere => (cube(-5.12, 5.12)?, 0.0, at(0.0)),
            FunctionId::Cigar | FunctionId::Ellipse | FunctionId::Tablet => (cube(-10.0, 10.0)?, 0.0, at(0.0)),
            FunctionId::Griewank => (cube(-600.0, 600.0)?, 0.0, at(0.0)),
            FunctionId::Rosenbrock => (cube(-5.0, 10.0)?, 0.0, at(1.0)),
            FunctionId::Ackley => (cube(-32.768, 32.768)?, 0.0, at(0.0)),
            FunctionId::Rastrigin => (cube(-5.12, 5.12)?, 0.0, at(0.0)),
            FunctionId::Schwefel => (cube(-500.0, 500.0)?, 0.0, at(SCHWEFEL_ARGMIN)),
            FunctionId::Easom => (cube(-100.0, 100.0)?, -1.0, vec![vec![PI, PI]]),
            FunctionId::SixHumpCamel => (
                Bounds::new(vec![-3.0, -2.0], vec![3.0, 2.0])?,
                -1.031_628_453_489_877_4,
                vec![
                    vec![0.089_842_013_100_318_06, -0.712_656_403_020_739_6],
                    vec![-0.089_842_013_100_318_06, 0.712_656_403_020_739_6],
                ],
            ),
            FunctionId::Branin => (
                Bounds::new(vec![-5.0, 0.0], vec![10.0, 15.0])?,
                5.0 / (4.0 * PI),
                vec![vec![-PI, 12.275], vec![PI, 2.275], vec![3.0 * PI, 2.475]],
            ),
            FunctionId::GoldsteinPrice => (cube(-2.0, 2.0)?, 3.0, vec![vec![0.0, -1.0]]),
            FunctionId::MartinGaddy => (cube(0.0, 10.0)?, 0.0, vec![vec![5.0, 5.0]]),
        };
        Ok(Self {
            id,
            bounds,
            known_optimum_value: value,
            known_optimum_points: points,
        })
    }

    pub fn id(&self) -> FunctionId {
        self.id
    }

    pub fn name(&self) -> &'static str {
        self.id.name()
    }

    pub fn dimension(&self) -> usize {
        self.bounds.dimension()
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn known_optimum_value(&self) -> f64 {
        self.known_optimum_value
    }

    pub fn known_optimum_points(&self) -> &[Vec<f64>] {
        &self.known_optimum_points
    }

    /// Tolerance within which the optimum points reproduce the optimum value.
    pub fn optimum_tolerance(&self) -> f64 {
        match self.id {
            FunctionId::Schwefel => 1e-3,
            _ => 1e-9,
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dimension() {
            return Err(PpaError::DimensionMismatch {
                expected: self.dimension(),
                got: x.len(),
            });
        }
        Ok(eval_raw(self.id, x))
    }
}

impl Objective for BenchmarkFunction {
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        BenchmarkFunction::evaluate(self, x)
    }
}

/// All fourteen functions, the scalable ones at `dimension`.
pub fn list_functions(dimension: usize) -> Result<Vec<BenchmarkFunction>> {
    FunctionId::ALL
        .into_iter()
        .map(|id| BenchmarkFunction::new(id, if id.is_scalable() { dimension } else { 2 }))
        .collect()
}

fn eval_raw(id: FunctionId, x: &[f64]) -> f64 {
    let n = x.len() as f64;
    match id {
        FunctionId::Sphere => x.iter().map(|v| v * v).sum(),
        FunctionId::Cigar => x[0] * x[0] + 1e6 * x[1..].iter().map(|v| v * v).sum::<f64>(),
        FunctionId::Ellipse => {
            let denom = (x.len() - 1) as f64;
            x.iter()
                .enumerate()
                .map(|(i, v)| 10f64.powf(6.0 * i as f64 / denom) * v * v)
                .sum()
        }
        FunctionId::Tablet => 1e6 * x[0] * x[0] + x[1..].iter().map(|v| v * v).sum::<f64>(),
        FunctionId::Griewank => {
            let sum: f64 = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
            let prod: f64 = x
                .iter()
                .enumerate()
                .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
                .product();
            sum + (1.0 - prod)
        }
        FunctionId::Rosenbrock => x
            .windows(2)
            .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
            .sum(),
        FunctionId::Ackley => {
            let rms = (x.iter().map(|v| v * v).sum::<f64>() / n).sqrt();
            let mean_cos = x.iter().map(|v| (TAU * v).cos()).sum::<f64>() / n;
            // Grouped so each bracket is non-negative in floating point.
            20.0 * (1.0 - (-0.2 * rms).exp()) + (E - mean_cos.exp())
        }
        FunctionId::Rastrigin => x.iter().map(|v| v * v + 10.0 * (1.0 - (TAU * v).cos())).sum(),
        FunctionId::Schwefel => SCHWEFEL_OFFSET * n - x.iter().map(|v| v * v.abs().sqrt().sin()).sum::<f64>(),
        FunctionId::Easom => {
            let (a, b) = (x[0], x[1]);
            -a.cos() * b.cos() * (-((a - PI).powi(2) + (b - PI).powi(2))).exp()
        }
        FunctionId::SixHumpCamel => {
            let (a, b) = (x[0], x[1]);
            let a2 = a * a;
            let b2 = b * b;
            (4.0 - 2.1 * a2 + a2 * a2 / 3.0) * a2 + a * b + (4.0 * b2 - 4.0) * b2
        }
        FunctionId::Branin => {
            let (a, b) = (x[0], x[1]);
            let bb = 5.1 / (4.0 * PI * PI);
            let c = 5.0 / PI;
            let t = 1.0 / (8.0 * PI);
            (b - bb * a * a + c * a - 6.0).powi(2) + 10.0 * (1.0 - t) * a.cos() + 10.0
        }
        FunctionId::GoldsteinPrice => {
            let (a, b) = (x[0], x[1]);
            let p =
                1.0 + (a + b + 1.0).powi(2) * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
            let q = 30.0
                + (2.0 * a - 3.0 * b).powi(2)
                    * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
            p * q
        }
        FunctionId::MartinGaddy => {
            let (a, b) = (x[0], x[1]);
            (a - b).powi(2) + ((a + b - 10.0) / 3.0).powi(2)
        }
    }
}
