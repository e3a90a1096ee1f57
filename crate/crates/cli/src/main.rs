use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ppa::report::{render_heatmaps, write_manifest, ColorScale, ColorValue, HeatmapOptions, HeatmapTable, Manifest};
use ppa::{
    default_sweep_a, default_sweep_b, list_functions, run_ppa, run_sweep, BenchmarkFunction, FunctionId, PpaConfig,
    SteepeningSchedule, SweepOptions, SweepSpec,
};

/// Plant propagation algorithm with a steepening fitness schedule.
#[derive(Parser)]
#[command(name = "ppa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimize one benchmark function once and print the result.
    Run(RunArgs),
    /// Run a factor sweep and write results.csv plus manifest.json.
    Sweep(SweepArgs),
    /// Render SVG heatmaps from a results.csv.
    Plot(PlotArgs),
    /// List the available benchmark functions.
    ListFunctions(ListArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Function identifier (see `list-functions`).
    #[arg(long)]
    function: String,
    /// Dimension of the scalable functions.
    #[arg(long, default_value_t = ppa::DEFAULT_DIMENSION)]
    dimension: usize,
    /// Steepening factor: s = evals / factor + 1.
    #[arg(long, conflicts_with = "vanilla", required_unless_present = "vanilla")]
    factor: Option<f64>,
    /// Disable steepening (s = 1).
    #[arg(long)]
    vanilla: bool,
    #[arg(long, default_value_t = 10_000)]
    budget: u64,
    #[arg(long, default_value_t = 30)]
    pop_size: usize,
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    #[arg(long, env = "PPA_SEED", default_value_t = 0)]
    seed: u64,
    /// Write (evaluation, best_so_far) pairs to this CSV file.
    #[arg(long)]
    trajectory: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// Nine scalable functions at n = 2, factors 100..4000.
    SweepA,
    /// Five 2-D functions, factors 100..4000.
    SweepB,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep config file (TOML).
    #[arg(long, conflicts_with_all = ["preset", "manifest"])]
    config: Option<PathBuf>,
    /// One of the built-in protocols.
    #[arg(long, value_enum, conflicts_with = "manifest")]
    preset: Option<Preset>,
    /// Re-run the sweep recorded in a manifest.json.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
    /// Override the base seed.
    #[arg(long, env = "PPA_SEED")]
    seed: Option<u64>,
    /// Append a schedule-off column to the factor grid.
    #[arg(long)]
    with_vanilla: bool,
    /// Suppress per-cell progress lines.
    #[arg(long)]
    quiet: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ValueArg {
    Error,
    Raw,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    PerFunction,
    Global,
}

#[derive(Args)]
struct PlotArgs {
    /// results.csv written by `sweep`.
    csv: PathBuf,
    /// Output directory for the SVG files.
    #[arg(long)]
    out: PathBuf,
    /// Color by log distance to the optimum, or by the raw median.
    #[arg(long, value_enum, default_value = "error")]
    value: ValueArg,
    #[arg(long, value_enum, default_value = "per-function")]
    scale: ScaleArg,
    /// Write a single heatmap.svg with every function.
    #[arg(long)]
    combined: bool,
}

#[derive(Args)]
struct ListArgs {
    #[arg(long, default_value_t = ppa::DEFAULT_DIMENSION)]
    dimension: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Plot(a) => cmd_plot(a),
        Command::ListFunctions(a) => cmd_list(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn fmt_point(x: &[f64]) -> String {
    let parts: Vec<String> = x.iter().map(|v| format!("{v:.17e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn cmd_run(a: RunArgs) -> Result<()> {
    let id: FunctionId = a.function.parse()?;
    let function = BenchmarkFunction::new(id, if id.is_scalable() { a.dimension } else { 2 })?;
    let schedule = match a.factor {
        Some(f) if !a.vanilla => SteepeningSchedule::linear(f)?,
        _ => SteepeningSchedule::Vanilla,
    };
    let config = PpaConfig {
        pop_size: a.pop_size,
        n_max: a.n_max,
        budget: a.budget,
        schedule,
    };
    let result = run_ppa(&config, &function, a.seed)?;

    let mut out = std::io::stdout().lock();
    writeln!(out, "function:         {} (n = {})", id, function.dimension())?;
    match schedule {
        SteepeningSchedule::Vanilla => writeln!(out, "schedule:         vanilla")?,
        SteepeningSchedule::Linear { factor } => writeln!(out, "schedule:         linear, factor {factor}")?,
    }
    writeln!(out, "seed:             {}", a.seed)?;
    writeln!(out, "best value:       {:.17e}", result.best_value)?;
    writeln!(out, "best point:       {}", fmt_point(&result.best_point))?;
    writeln!(out, "known optimum:    {:.17e}", function.known_optimum_value())?;
    writeln!(out, "evaluations used: {}", result.evaluations_used)?;

    if let Some(path) = a.trajectory {
        let mut csv = String::from("evaluation,best_so_far\n");
        for p in &result.trajectory {
            csv.push_str(&format!("{},{:.16e}\n", p.evaluation, p.best_so_far));
        }
        std::fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn load_spec(a: &SweepArgs) -> Result<SweepSpec> {
    let mut spec = match (&a.config, a.preset, &a.manifest) {
        (Some(path), _, _) => SweepSpec::load(path)?,
        (_, Some(Preset::SweepA), _) => default_sweep_a(),
        (_, Some(Preset::SweepB), _) => default_sweep_b(),
        (_, _, Some(path)) => Manifest::load(path)?.spec,
        _ => bail!("one of --config, --preset or --manifest is required"),
    };
    if let Some(seed) = a.seed {
        spec.base_seed = seed;
    }
    if a.with_vanilla {
        spec = spec.with_vanilla();
    }
    spec.validate()?;
    Ok(spec)
}

fn cmd_sweep(a: SweepArgs) -> Result<()> {
    let spec = load_spec(&a)?;
    if a.jobs == Some(0) {
        bail!("--jobs must be at least 1");
    }
    std::fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;

    let quiet = a.quiet;
    let start = Instant::now();
    let results = run_sweep(&spec, &SweepOptions { jobs: a.jobs }, &|p| {
        if !quiet {
            eprintln!(
                "[{:>4}/{}] {:<15} factor {:>7}  median {:.6e}  ({:.2}s)",
                p.completed,
                p.total,
                p.function.name(),
                p.factor.to_string(),
                p.median,
                p.elapsed.as_secs_f64()
            );
        }
    })?;
    let elapsed = start.elapsed();

    let table = HeatmapTable::from_cells(&results)?;
    let csv_path = a.out.join("results.csv");
    let manifest_path = a.out.join("manifest.json");
    table.write_csv(&csv_path)?;
    write_manifest(&spec, &results, elapsed, &manifest_path)?;
    println!(
        "{} cells in {:.1}s -> {}, {}",
        results.len(),
        elapsed.as_secs_f64(),
        csv_path.display(),
        manifest_path.display()
    );
    Ok(())
}

fn cmd_plot(a: PlotArgs) -> Result<()> {
    let table = HeatmapTable::read_csv(Path::new(&a.csv))?;
    let opts = HeatmapOptions {
        value: match a.value {
            ValueArg::Error => ColorValue::LogError,
            ValueArg::Raw => ColorValue::Raw,
        },
        scale: match a.scale {
            ScaleArg::PerFunction => ColorScale::PerFunction,
            ScaleArg::Global => ColorScale::Global,
        },
        combined: a.combined,
    };
    if let Some(r) = table.rows().iter().find(|r| !r.median.is_finite()) {
        bail!("non-finite median for ({}, {})", r.function, r.factor);
    }
    for path in render_heatmaps(&table, &a.out, &opts)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn cmd_list(a: ListArgs) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{:<15} {:>3}  {:<28} optimum", "id", "n", "domain")?;
    for f in list_functions(a.dimension)? {
        let b = f.bounds();
        let same = b.lower().windows(2).all(|w| w[0] == w[1]) && b.upper().windows(2).all(|w| w[0] == w[1]);
        let domain = if same {
            format!("[{}, {}]^{}", b.lower()[0], b.upper()[0], f.dimension())
        } else {
            b.lower()
                .iter()
                .zip(b.upper())
                .map(|(l, u)| format!("[{l}, {u}]"))
                .collect::<Vec<_>>()
                .join(" x ")
        };
        writeln!(
            out,
            "{:<15} {:>3}  {:<28} {}",
            f.name(),
            f.dimension(),
            domain,
            f.known_optimum_value()
        )?;
    }
    Ok(())
}
