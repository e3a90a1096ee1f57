//! A deliberately naive transcription of the six algorithm steps, sharing only
//! the random source with the library. Both must agree bit-for-bit.

use ppa::{run_ppa, BenchmarkFunction, FunctionId, PpaConfig, RngState, SteepeningSchedule};

struct Reference {
    best: f64,
    evals: u64,
}

fn reference_ppa(cfg: &PpaConfig, f: &BenchmarkFunction, seed: u64) -> Reference {
    let lo = f.bounds().lower().to_vec();
    let hi = f.bounds().upper().to_vec();
    let dim = lo.len();
    let mut rng = RngState::from_seed(seed);
    let mut evals = 0u64;
    let mut best = f64::INFINITY;

    // 1. uniform initialization
    let mut pop: Vec<(Vec<f64>, f64)> = Vec::new();
    for _ in 0..cfg.pop_size {
        let mut x = vec![0.0; dim];
        for j in 0..dim {
            x[j] = lo[j] + rng.next_uniform() * (hi[j] - lo[j]);
            if x[j] > hi[j] {
                x[j] = hi[j];
            }
        }
        let v = f.evaluate(&x).unwrap();
        evals += 1;
        if v < best {
            best = v;
        }
        pop.push((x, v));
    }

    while evals < cfg.budget {
        let s = match cfg.schedule {
            SteepeningSchedule::Vanilla => 1.0,
            SteepeningSchedule::Linear { factor } => evals as f64 / factor + 1.0,
        };
        // 2. normalize
        let fmax = pop.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        let fmin = pop.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let mut kids: Vec<(Vec<f64>, f64)> = Vec::new();
        let mut done = false;
        for (x, v) in &pop {
            if done || evals >= cfg.budget {
                break;
            }
            let z = if fmax == fmin { 0.5 } else { (fmax - v) / (fmax - fmin) };
            // 3. fitness
            let big_f = 0.5 * ((4.0 * s * z - 2.0 * s).tanh() + 1.0);
            // 4. offspring count, floored at one
            let r = rng.next_uniform();
            let mut n = (cfg.n_max as f64 * big_f * r).ceil() as usize;
            if n < 1 {
                n = 1;
            }
            if n > cfg.n_max {
                n = cfg.n_max;
            }
            // 5. mutation of every dimension, clamped
            for _ in 0..n {
                if evals >= cfg.budget {
                    done = true;
                    break;
                }
                let mut y = x.clone();
                for j in 0..dim {
                    let r = rng.next_uniform();
                    y[j] += (hi[j] - lo[j]) * 2.0 * (r - 0.5) * (1.0 - big_f);
                    if y[j] < lo[j] {
                        y[j] = lo[j];
                    }
                    if y[j] > hi[j] {
                        y[j] = hi[j];
                    }
                }
                let w = f.evaluate(&y).unwrap();
                evals += 1;
                if w < best {
                    best = w;
                }
                kids.push((y, w));
            }
        }
        // 6. elitist selection, stable on ties
        pop.extend(kids);
        let mut idx: Vec<usize> = (0..pop.len()).collect();
        idx.sort_by(|&a, &b| pop[a].1.partial_cmp(&pop[b].1).unwrap().then(a.cmp(&b)));
        pop = idx.into_iter().take(cfg.pop_size).map(|i| pop[i].clone()).collect();
    }
    Reference { best, evals }
}

#[test]
fn library_matches_reference_transcription() {
    let cases = [
        (FunctionId::Sphere, SteepeningSchedule::Vanilla, 10_000, 30, 5),
        (
            FunctionId::Sphere,
            SteepeningSchedule::Linear { factor: 900.0 },
            10_000,
            30,
            5,
        ),
        (
            FunctionId::Rastrigin,
            SteepeningSchedule::Linear { factor: 1500.0 },
            4_321,
            17,
            3,
        ),
        (
            FunctionId::Easom,
            SteepeningSchedule::Linear { factor: 100.0 },
            2_000,
            30,
            5,
        ),
        (FunctionId::Branin, SteepeningSchedule::Vanilla, 999, 7, 1),
    ];
    for (id, schedule, budget, pop_size, n_max) in cases {
        let f = BenchmarkFunction::new(id, 2).unwrap();
        let cfg = PpaConfig {
            pop_size,
            n_max,
            budget,
            schedule,
        };
        for seed in 0..5 {
            let lib = run_ppa(&cfg, &f, seed).unwrap();
            let oracle = reference_ppa(&cfg, &f, seed);
            assert_eq!(
                lib.best_value.to_bits(),
                oracle.best.to_bits(),
                "{id} {schedule:?} seed {seed}"
            );
            assert_eq!(lib.evaluations_used, oracle.evals);
        }
    }
}

#[test]
fn vanilla_sphere_descends_below_one_hundredth() {
    let f = BenchmarkFunction::new(FunctionId::Sphere, 2).unwrap();
    let cfg = PpaConfig::default();
    for seed in 0..20 {
        let oracle = reference_ppa(&cfg, &f, seed);
        assert!(oracle.best < 1e-2, "reference seed {seed}: {}", oracle.best);
        let lib = run_ppa(&cfg, &f, seed).unwrap();
        assert!(lib.best_value < 1e-2, "seed {seed}: {}", lib.best_value);
    }
}
