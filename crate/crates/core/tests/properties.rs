use ppa::{
    fitness, normalize, run_cell, run_ppa, run_ppa_observed, run_sweep, steepness, BenchmarkFunction, Factor,
    FunctionId, PpaConfig, SteepeningSchedule, SweepOptions, SweepSpec,
};
use proptest::prelude::*;

fn any_function() -> impl Strategy<Value = FunctionId> {
    prop::sample::select(FunctionId::ALL.to_vec())
}

fn any_schedule() -> impl Strategy<Value = SteepeningSchedule> {
    prop_oneof![
        Just(SteepeningSchedule::Vanilla),
        (1.0f64..5000.0).prop_map(|factor| SteepeningSchedule::Linear { factor }),
    ]
}

prop_compose! {
    fn any_config()(pop_size in 1usize..40, n_max in 1usize..8, extra in 0u64..1500, schedule in any_schedule())
        -> PpaConfig {
        PpaConfig { pop_size, n_max, budget: pop_size as u64 + extra, schedule }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normalization_spans_unit_interval(v in prop::collection::vec(-1e6f64..1e6, 2..50)) {
        let z = normalize(&v).unwrap();
        let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if lo < hi {
            prop_assert_eq!(z.iter().cloned().fold(f64::INFINITY, f64::min), 0.0);
            prop_assert_eq!(z.iter().cloned().fold(f64::NEG_INFINITY, f64::max), 1.0);
        } else {
            prop_assert!(z.iter().all(|&x| x == 0.5));
        }
    }

    #[test]
    fn fitness_is_increasing_in_z(a in 0.0f64..=1.0, b in 0.0f64..=1.0, s in 1.0f64..3.0) {
        // Beyond s ~ 3 the tails saturate to 0 or 1 in double precision.
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(hi - lo > 1e-9);
        prop_assert!(fitness(lo, s) < fitness(hi, s));
    }

    #[test]
    fn fitness_midpoint_is_one_half(s in 1.0f64..1e6) {
        prop_assert_eq!(fitness(0.5, s), 0.5);
    }

    #[test]
    fn steepening_approaches_step(z in 0.0f64..=1.0, s in 1.0f64..4.0, ds in 0.1f64..2.0) {
        prop_assume!((z - 0.5).abs() > 0.05);
        let step = if z > 0.5 { 1.0 } else { 0.0 };
        let d1 = (fitness(z, s) - step).abs();
        let d2 = (fitness(z, s + ds) - step).abs();
        // Strict until the gap underflows to zero.
        prop_assert!(d2 < d1 || d1 == 0.0);
    }

    #[test]
    fn huge_factor_degenerates_to_vanilla(z in 0.0f64..=1.0, evals in 0u64..=10_000, factor in 1e12f64..1e15) {
        let s = steepness(evals, SteepeningSchedule::Linear { factor });
        prop_assert!((fitness(z, s) - fitness(z, 1.0)).abs() < 1e-6);
    }

    #[test]
    fn run_invariants_hold(cfg in any_config(), id in any_function(), seed in any::<u64>()) {
        let f = BenchmarkFunction::new(id, 2).unwrap();
        let mut last_best = f64::INFINITY;
        let mut last_evals = 0;
        let res = run_ppa_observed(&cfg, &f, seed, |view| {
            assert_eq!(view.population.len(), cfg.pop_size);
            assert!(view.evaluations <= cfg.budget);
            assert!(view.evaluations >= last_evals);
            last_evals = view.evaluations;
            for ind in view.population {
                assert!(f.bounds().contains(&ind.position), "{:?} out of bounds", ind.position);
                assert_eq!(f.evaluate(&ind.position).unwrap(), ind.objective);
            }
            let best = view.population.iter().map(|i| i.objective).fold(f64::INFINITY, f64::min);
            assert!(best <= last_best);
            last_best = best;
        }).unwrap();

        prop_assert_eq!(res.evaluations_used, cfg.budget);
        let monotone = res
            .trajectory
            .windows(2)
            .all(|w| w[0].evaluation < w[1].evaluation && w[1].best_so_far <= w[0].best_so_far);
        prop_assert!(monotone);
        prop_assert_eq!(res.trajectory.last().unwrap().best_so_far, res.best_value);
        prop_assert_eq!(res.trajectory.last().unwrap().evaluation, res.evaluations_used);
        prop_assert_eq!(res.best_value, last_best);
        prop_assert_eq!(f.evaluate(&res.best_point).unwrap(), res.best_value);
        prop_assert!(f.bounds().contains(&res.best_point));
    }

    #[test]
    fn runs_are_deterministic(cfg in any_config(), id in any_function(), seed in any::<u64>()) {
        let f = BenchmarkFunction::new(id, 2).unwrap();
        prop_assert_eq!(run_ppa(&cfg, &f, seed).unwrap(), run_ppa(&cfg, &f, seed).unwrap());
    }

    #[test]
    fn non_negative_functions_stay_non_negative(id in any_function(), u in prop::collection::vec(0.0f64..=1.0, 5)) {
        let nonneg = [
            FunctionId::Sphere, FunctionId::Cigar, FunctionId::Ellipse, FunctionId::Tablet,
            FunctionId::Griewank, FunctionId::Rosenbrock, FunctionId::Ackley, FunctionId::Rastrigin,
        ];
        prop_assume!(nonneg.contains(&id));
        let f = BenchmarkFunction::new(id, 5).unwrap();
        let x: Vec<f64> = u.iter().zip(f.bounds().lower().iter().zip(f.bounds().upper()))
            .map(|(t, (lo, hi))| lo + t * (hi - lo)).collect();
        let v = f.evaluate(&x).unwrap();
        prop_assert!(v >= 0.0, "{} at {:?}: {}", id, x, v);
        prop_assert_eq!(v.to_bits(), f.evaluate(&x).unwrap().to_bits());
    }

    #[test]
    fn symmetric_functions(x in prop::collection::vec(-5.0f64..5.0, 3)) {
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        for id in [FunctionId::Sphere, FunctionId::Griewank] {
            let f = BenchmarkFunction::new(id, 3).unwrap();
            prop_assert_eq!(f.evaluate(&x).unwrap(), f.evaluate(&neg).unwrap());
        }
    }
}

fn small_spec(seed: u64, functions: Vec<FunctionId>) -> SweepSpec {
    SweepSpec {
        functions,
        dimension: 2,
        factors: vec![Factor::Linear(50.0), Factor::Linear(400.0), Factor::Vanilla],
        repeats: 3,
        budget: 200,
        pop_size: 8,
        n_max: 4,
        base_seed: seed,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sweep_is_independent_of_cell_order(seed in any::<u64>(), perm_seed in any::<u64>()) {
        let spec = small_spec(seed, vec![FunctionId::Rastrigin, FunctionId::Easom]);
        let expected = run_sweep(&spec, &SweepOptions::default(), &|_| {}).unwrap();

        let mut order: Vec<(usize, usize)> = (0..2).flat_map(|f| (0..3).map(move |k| (f, k))).collect();
        let mut rng = ppa::RngState::from_seed(perm_seed);
        for i in (1..order.len()).rev() {
            let j = (rng.next_uniform() * (i + 1) as f64) as usize;
            order.swap(i, j);
        }
        let mut shuffled: Vec<_> = order.iter().map(|&(f, k)| ((f, k), run_cell(&spec, f, k).unwrap())).collect();
        shuffled.sort_by_key(|(key, _)| *key);
        let shuffled: Vec<_> = shuffled.into_iter().map(|(_, c)| c).collect();
        prop_assert_eq!(shuffled, expected);
    }
}

#[test]
fn sweep_completeness_and_seed_disjointness() {
    let spec = small_spec(42, vec![FunctionId::Sphere, FunctionId::Branin, FunctionId::Ackley]);
    let cells = run_sweep(&spec, &SweepOptions::default(), &|_| {}).unwrap();
    assert_eq!(cells.len(), 9);
    let mut seeds: Vec<u64> = cells.iter().flat_map(|c| c.seeds.clone()).collect();
    assert!(cells.iter().all(|c| c.finals.len() == 3));
    seeds.sort_unstable();
    seeds.dedup();
    assert_eq!(seeds.len(), 27);
    for c in &cells {
        assert_eq!(c.median, ppa::median(&c.finals).unwrap());
    }
}

#[test]
fn sequential_and_parallel_sweeps_agree() {
    let spec = small_spec(7, vec![FunctionId::Schwefel, FunctionId::GoldsteinPrice]);
    let seq = run_sweep(&spec, &SweepOptions { jobs: Some(1) }, &|_| {}).unwrap();
    let par = run_sweep(&spec, &SweepOptions { jobs: Some(4) }, &|_| {}).unwrap();
    assert_eq!(seq, par);
}

#[test]
fn full_grid_seed_check_passes_for_presets() {
    ppa::default_sweep_a().with_vanilla().check_seed_disjointness().unwrap();
    ppa::default_sweep_b().with_vanilla().check_seed_disjointness().unwrap();
}
