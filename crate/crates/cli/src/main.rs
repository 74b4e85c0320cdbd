//! `jssp`: solve, benchmark, validate and report on job-shop instances.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use jssp_bio::harness::{
    format_schedule_dump, parse_schedule_dump, render_report, run_bench, solve, summary_csv,
    write_outputs, BenchConfig,
};
use jssp_bio::io::{load_instance, read_run_records, ParseOptions};
use jssp_bio::stats::summarize_runs;
use jssp_bio::{validate_schedule, Algorithm, Instance, OpRef, Schedule};

#[derive(Parser)]
#[command(name = "jssp", version, about = "Bio-inspired job-shop scheduling solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance with one algorithm and seed.
    Solve(SolveArgs),
    /// Run the seeded multi-run benchmark and write CSVs, a report and best schedules.
    Bench(BenchArgs),
    /// Check a schedule dump against its instance.
    Validate(ValidateArgs),
    /// Regenerate the summary and report from a runs CSV.
    Report(ReportArgs),
}

#[derive(Args)]
struct Common {
    /// Flat `key = value` configuration file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Parameter override such as `eas.alpha=0.2` or `clonalg.pop_size=50`.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Stop each run after this many makespan evaluations.
    #[arg(long)]
    budget: Option<u64>,
    /// Machine indices in instance files start at 1.
    #[arg(long)]
    one_based: bool,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, default_value = "eas", value_parser = parse_algorithm)]
    alg: Algorithm,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the best schedule in dump format to this file.
    #[arg(long, value_name = "PATH")]
    dump: Option<PathBuf>,
    /// Print per-operation start times and the machine-ordered listing.
    #[arg(long)]
    schedule: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct BenchArgs {
    /// Instance files or directories.
    instances: Vec<PathBuf>,
    /// Algorithms to run, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_algorithm)]
    alg: Vec<Algorithm>,
    #[arg(long)]
    runs: Option<usize>,
    /// Base seed; run `i` uses `seed + i`.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock time per run (outputs then vary between reruns).
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ValidateArgs {
    instance: PathBuf,
    dump: PathBuf,
    #[arg(long)]
    one_based: bool,
}

#[derive(Args)]
struct ReportArgs {
    /// A `runs.csv` file written by `bench`.
    runs: PathBuf,
    /// Also write `summary.csv` and `report.txt` into this directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

fn config_from(common: &Common) -> Result<BenchConfig> {
    let mut config = BenchConfig::default();
    if let Some(path) = &common.config {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        config
            .apply_text(&text)
            .with_context(|| format!("invalid config {}", path.display()))?;
    }
    for p in &common.params {
        let Some((key, value)) = p.split_once('=') else {
            bail!("--param expects KEY=VALUE, got {p:?}");
        };
        config.apply(key.trim(), value.trim())?;
    }
    if common.budget.is_some() {
        config.eval_budget = common.budget;
    }
    if common.one_based {
        config.parse.one_based = true;
    }
    Ok(config)
}

fn load(path: &Path, opts: ParseOptions) -> Result<Instance> {
    Ok(load_instance(path, opts)?)
}

fn print_schedule(instance: &Instance, schedule: &Schedule) {
    println!("job step machine start end");
    for job in 0..instance.num_jobs() {
        for (step, op) in instance.job(job).iter().enumerate() {
            let s = schedule.start(instance, OpRef::new(job, step));
            println!("{job} {step} {} {s} {}", op.machine, s + op.duration);
        }
    }
    for (machine, ops) in schedule.machine_sequences(instance).iter().enumerate() {
        let cells: Vec<String> = ops
            .iter()
            .map(|&op| {
                let s = schedule.start(instance, op);
                format!("J{}[{}-{}]", op.job, s, s + instance.op(op).duration)
            })
            .collect();
        println!("M{machine}: {}", cells.join(" "));
    }
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode> {
    let config = config_from(&args.common)?;
    let instance = load(&args.instance, config.parse)?;
    let r = solve(&instance, args.alg, args.seed, &config.eas, &config.clonalg, config.eval_budget)?;
    println!("instance {}", instance.name());
    println!("algorithm {}", args.alg);
    println!("seed {}", args.seed);
    println!("best_makespan {}", r.best_makespan);
    println!("evals_to_best {}", r.evals_to_best);
    println!("total_evals {}", r.total_evals);
    if args.schedule {
        print_schedule(&instance, &r.best_schedule);
    }
    if let Some(path) = &args.dump {
        fs::write(path, format_schedule_dump(&instance, &r.best_schedule))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode> {
    let mut config = config_from(&args.common)?;
    if !args.instances.is_empty() {
        config.instances = args.instances;
    }
    if !args.alg.is_empty() {
        config.algorithms = args.alg;
    }
    if let Some(runs) = args.runs {
        config.runs = runs;
    }
    if let Some(seed) = args.seed {
        config.base_seed = seed;
    }
    if let Some(out) = args.out {
        config.out_dir = out;
    }
    if args.timing {
        config.record_wall_time = true;
    }
    let outcome = run_bench(&config)?;
    for (path, reason) in &outcome.failures {
        eprintln!("error: skipped {}: {reason}", path.display());
    }
    if outcome.records.is_empty() {
        bail!("no instance could be loaded");
    }
    write_outputs(&outcome, &config.out_dir)?;
    println!(
        "{} runs written to {}",
        outcome.records.len(),
        config.out_dir.display()
    );
    Ok(if outcome.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_validate(args: ValidateArgs) -> Result<ExitCode> {
    let instance = load(&args.instance, ParseOptions { one_based: args.one_based })?;
    let text = fs::read_to_string(&args.dump)
        .with_context(|| format!("cannot read {}", args.dump.display()))?;
    let schedule = parse_schedule_dump(&instance, &text, &args.dump)?;
    let violations = validate_schedule(&instance, &schedule)?;
    if violations.is_empty() {
        println!("feasible, makespan {}", schedule.makespan());
        return Ok(ExitCode::SUCCESS);
    }
    println!("infeasible: {} violations", violations.len());
    for v in &violations {
        println!("  {v}");
    }
    Ok(ExitCode::FAILURE)
}

fn cmd_report(args: ReportArgs) -> Result<ExitCode> {
    let records = read_run_records(&args.runs)?;
    let report = render_report(&records)?;
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        let path = dir.join("summary.csv");
        fs::write(&path, summary_csv(&summarize_runs(&records)?))
            .with_context(|| format!("cannot write {}", path.display()))?;
        let path = dir.join("report.txt");
        fs::write(&path, &report).with_context(|| format!("cannot write {}", path.display()))?;
    }
    print!("{report}");
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Report(a) => cmd_report(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::FAILURE
    })
}
