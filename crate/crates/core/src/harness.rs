//! Benchmark protocol: seeded repeated runs, CSV outputs, text reports and
//! the schedule dump format.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clonalg::{run_clonalg, AffinityMode, ClonalgParams};
use crate::eas::{run_eas, EasParams, Heuristic};
use crate::error::{Error, Result};
use crate::io::{bks_entry, load_instance, write_run_records, ParseOptions, RunRecord};
use crate::model::{Instance, OpRef, Schedule, Time};
use crate::solver::{Algorithm, SolverResult};
use crate::stats::{bks_hits, summarize, summarize_runs, InstanceSummary};

/// Runs one algorithm on `instance` with an rng seeded from `seed`.
pub fn solve(
    instance: &Instance,
    algorithm: Algorithm,
    seed: u64,
    eas: &EasParams,
    clonalg: &ClonalgParams,
    eval_budget: Option<u64>,
) -> Result<SolverResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match algorithm {
        Algorithm::Eas => run_eas(instance, eas, &mut rng, eval_budget),
        Algorithm::Clonalg => run_clonalg(instance, clonalg, &mut rng, eval_budget),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    /// Instance files or directories of instance files.
    pub instances: Vec<PathBuf>,
    pub algorithms: Vec<Algorithm>,
    pub runs: usize,
    /// Run `i` uses seed `base_seed + i`.
    pub base_seed: u64,
    pub eas: EasParams,
    pub clonalg: ClonalgParams,
    pub eval_budget: Option<u64>,
    pub out_dir: PathBuf,
    /// Measure wall time; when off the column is written as 0 and outputs
    /// depend only on the configuration.
    pub record_wall_time: bool,
    pub parse: ParseOptions,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            instances: Vec::new(),
            algorithms: Algorithm::ALL.to_vec(),
            runs: 50,
            base_seed: 0,
            eas: EasParams::default(),
            clonalg: ClonalgParams::default(),
            eval_budget: None,
            out_dir: PathBuf::from("bench-out"),
            record_wall_time: false,
            parse: ParseOptions::default(),
        }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParams(format!("invalid value {value:?} for {key}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(Error::InvalidParams(format!("invalid value {value:?} for {key}"))),
    }
}

fn optional<T: std::str::FromStr>(key: &str, value: &str) -> Result<Option<T>> {
    match value.trim() {
        "" | "auto" | "none" => Ok(None),
        v => parse_value(key, v).map(Some),
    }
}

/// Applies a `key=value` override to solver parameters. Keys are prefixed
/// with `eas.` or `clonalg.`.
pub fn apply_solver_param(
    eas: &mut EasParams,
    clonalg: &mut ClonalgParams,
    key: &str,
    value: &str,
) -> Result<()> {
    match key {
        "eas.alpha" => eas.alpha = parse_value(key, value)?,
        "eas.rho" => eas.rho = parse_value(key, value)?,
        "eas.tau0" => eas.tau0 = parse_value(key, value)?,
        "eas.q" => eas.q = parse_value(key, value)?,
        "eas.cycles" => eas.cycles = parse_value(key, value)?,
        "eas.num_ants" => eas.num_ants = optional(key, value)?,
        "eas.elite" => eas.elite = parse_value(key, value)?,
        "eas.tau_min" => eas.tau_min = optional(key, value)?,
        "eas.heuristic" => {
            eas.heuristic = match value.trim().to_ascii_lowercase().as_str() {
                "inverse_duration" | "spt" => Heuristic::InverseDuration,
                "mwr" | "most_work_remaining" => Heuristic::MostWorkRemaining,
                "earliest_start" | "est" => Heuristic::EarliestStart,
                _ => return Err(Error::InvalidParams(format!("invalid value {value:?} for {key}"))),
            }
        }
        "clonalg.pop_size" => clonalg.pop_size = parse_value(key, value)?,
        "clonalg.generations" => clonalg.generations = parse_value(key, value)?,
        "clonalg.clone_factor" => clonalg.clone_factor = parse_value(key, value)?,
        "clonalg.mutation_factor" => clonalg.mutation_factor = parse_value(key, value)?,
        "clonalg.random_cell_fraction" => {
            clonalg.random_cell_fraction = parse_value(key, value)?
        }
        "clonalg.replace_worst" => clonalg.replace_worst = optional(key, value)?,
        "clonalg.select" => clonalg.select = optional(key, value)?,
        "clonalg.affinity_mode" => {
            clonalg.affinity_mode = match value.trim().to_ascii_lowercase().as_str() {
                "literal" => AffinityMode::Literal,
                "normalized" => AffinityMode::Normalized,
                _ => return Err(Error::InvalidParams(format!("invalid value {value:?} for {key}"))),
            }
        }
        _ => return Err(Error::InvalidParams(format!("unknown parameter {key:?}"))),
    }
    Ok(())
}

impl BenchConfig {
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "runs" => self.runs = parse_value(key, value)?,
            "seed" | "base_seed" => self.base_seed = parse_value(key, value)?,
            "algorithms" | "alg" => {
                self.algorithms = value
                    .split(',')
                    .map(|a| a.trim().parse().map_err(Error::InvalidParams))
                    .collect::<Result<_>>()?
            }
            "instances" => {
                self.instances = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(PathBuf::from)
                    .collect()
            }
            "out" => self.out_dir = PathBuf::from(value.trim()),
            "budget" => self.eval_budget = optional(key, value)?,
            "timing" => self.record_wall_time = parse_bool(key, value)?,
            "one_based" => self.parse.one_based = parse_bool(key, value)?,
            _ => apply_solver_param(&mut self.eas, &mut self.clonalg, key, value)?,
        }
        Ok(())
    }

    /// Applies a flat `key = value` config text; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Format {
                path: PathBuf::from("<config>"),
                line: i + 1,
                reason: format!("expected key = value, found {line:?}"),
            })?;
            self.apply(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::InvalidParams("runs must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidParams("no algorithm selected".into()));
        }
        if self.instances.is_empty() {
            return Err(Error::InvalidParams("no instance given".into()));
        }
        if self.algorithms.contains(&Algorithm::Eas) {
            self.eas.validate()?;
        }
        if self.algorithms.contains(&Algorithm::Clonalg) {
            self.clonalg.validate()?;
        }
        Ok(())
    }

    /// Instance files in canonical order, directories expanded.
    pub fn instance_files(&self) -> Result<Vec<PathBuf>> {
        let mut out = Vec::new();
        for p in &self.instances {
            if p.is_dir() {
                let mut files: Vec<PathBuf> = fs::read_dir(p)
                    .map_err(|source| Error::Io { path: p.clone(), source })?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.is_file())
                    .collect();
                files.sort();
                out.extend(files);
            } else {
                out.push(p.clone());
            }
        }
        Ok(out)
    }
}

/// Best run of one algorithm on one instance.
#[derive(Debug, Clone)]
pub struct BestRun {
    pub instance: Instance,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub result: SolverResult,
}

#[derive(Debug, Clone)]
pub struct BenchOutcome {
    pub records: Vec<RunRecord>,
    pub best: Vec<BestRun>,
    /// Instance files that could not be loaded, with the reason.
    pub failures: Vec<(PathBuf, String)>,
}

/// Executes `runs` seeded runs for every (instance, algorithm) pair. Cells
/// run in parallel and are collected in canonical order.
pub fn run_bench(config: &BenchConfig) -> Result<BenchOutcome> {
    config.validate()?;
    let mut instances = Vec::new();
    let mut failures = Vec::new();
    for path in config.instance_files()? {
        match load_instance(&path, config.parse) {
            Ok(inst) => instances.push(inst),
            Err(e) => failures.push((path, e.to_string())),
        }
    }

    let cells: Vec<(usize, Algorithm, u64)> = instances
        .iter()
        .enumerate()
        .flat_map(|(i, _)| {
            config.algorithms.iter().flat_map(move |&alg| {
                (0..config.runs as u64).map(move |r| (i, alg, config.base_seed + r))
            })
        })
        .collect();

    let results: Vec<(usize, Algorithm, u64, SolverResult, u64)> = cells
        .into_par_iter()
        .map(|(i, alg, seed)| {
            let clock = Instant::now();
            let res = solve(&instances[i], alg, seed, &config.eas, &config.clonalg, config.eval_budget)?;
            let ms = if config.record_wall_time {
                clock.elapsed().as_millis() as u64
            } else {
                0
            };
            Ok((i, alg, seed, res, ms))
        })
        .collect::<Result<_>>()?;

    let mut records = Vec::with_capacity(results.len());
    let mut best: Vec<BestRun> = Vec::new();
    for (i, alg, seed, res, ms) in results {
        let inst = &instances[i];
        records.push(RunRecord {
            instance: inst.name().to_string(),
            algorithm: alg,
            seed,
            best_makespan: res.best_makespan,
            evals_to_best: res.evals_to_best,
            total_evals: res.total_evals,
            wall_time_ms: ms,
        });
        match best
            .iter_mut()
            .find(|b| b.algorithm == alg && b.instance.name() == inst.name())
        {
            Some(b) if b.result.best_makespan <= res.best_makespan => {}
            Some(b) => {
                b.seed = seed;
                b.result = res;
            }
            None => best.push(BestRun {
                instance: inst.clone(),
                algorithm: alg,
                seed,
                result: res,
            }),
        }
    }
    Ok(BenchOutcome {
        records,
        best,
        failures,
    })
}

pub const SUMMARY_HEADER: &str = "instance,algorithm,bks,best_cmax,relative_error_pct,runs,mean_cmax,variance_cmax,stddev_cmax,mean_evals_to_best,max_evals_to_best,min_evals_to_best";

pub fn summary_csv(summaries: &[InstanceSummary]) -> String {
    let mut out = String::new();
    out.push_str(SUMMARY_HEADER);
    out.push('\n');
    for s in summaries {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:.6},{:.6},{:.6},{:.6},{},{}",
            s.instance_name,
            s.algorithm,
            s.bks.map_or(String::new(), |b| b.to_string()),
            s.best_cmax,
            s.relative_error_pct.map_or(String::new(), |e| format!("{e:.6}")),
            s.runs,
            s.cmax.mean,
            s.cmax.variance,
            s.cmax.stddev,
            s.mean_evals_to_best,
            s.max_evals_to_best,
            s.min_evals_to_best,
        );
    }
    out
}

fn stat_row(out: &mut String, label: &str, cols: &[Option<f64>], precision: usize) {
    let _ = write!(out, "{label:<28}");
    for c in cols {
        match c {
            Some(v) => {
                let _ = write!(out, "{:>14.*}", precision, v);
            }
            None => {
                let _ = write!(out, "{:>14}", "-");
            }
        }
    }
    out.push('\n');
}

/// Renders the text report from raw run records: a per-instance best/error
/// matrix, quality statistics over per-instance errors, BKS hit counts and
/// evaluations-to-best statistics over all runs.
pub fn render_report(records: &[RunRecord]) -> Result<String> {
    let summaries = summarize_runs(records)?;
    let mut algorithms: Vec<Algorithm> = summaries.iter().map(|s| s.algorithm).collect();
    algorithms.sort();
    algorithms.dedup();
    let mut instances: Vec<&str> = summaries.iter().map(|s| s.instance_name.as_str()).collect();
    instances.dedup();
    let find = |name: &str, alg: Algorithm| {
        summaries
            .iter()
            .find(|s| s.instance_name == name && s.algorithm == alg)
    };
    let runs_per_cell = summaries.iter().map(|s| s.runs).max().unwrap_or(0);

    let mut out = String::new();
    let _ = writeln!(out, "Best makespan and relative error per instance (best of up to {runs_per_cell} runs)");
    let _ = write!(out, "{:<10}{:>8}{:>8}", "instance", "size", "BKS");
    for a in &algorithms {
        let _ = write!(out, "{:>14}{:>10}", format!("{a} Cmax"), "err %");
    }
    out.push('\n');
    for name in &instances {
        let entry = bks_entry(name).ok();
        let size = entry.map_or("-".to_string(), |e| format!("{}x{}", e.size.0, e.size.1));
        let bks = entry.map_or("-".to_string(), |e| e.bks.to_string());
        let _ = write!(out, "{name:<10}{size:>8}{bks:>8}");
        for &a in &algorithms {
            match find(name, a) {
                Some(s) => {
                    let err = s
                        .relative_error_pct
                        .map_or("-".to_string(), |e| format!("{e:.2}"));
                    let _ = write!(out, "{:>14}{:>10}", s.best_cmax, err);
                }
                None => {
                    let _ = write!(out, "{:>14}{:>10}", "-", "-");
                }
            }
        }
        out.push('\n');
    }

    out.push('\n');
    let _ = writeln!(out, "Quality over per-instance relative errors");
    let _ = write!(out, "{:<28}", "");
    for a in &algorithms {
        let _ = write!(out, "{:>14}", a.tag());
    }
    out.push('\n');
    let errors: Vec<Vec<f64>> = algorithms
        .iter()
        .map(|&a| {
            summaries
                .iter()
                .filter(|s| s.algorithm == a)
                .filter_map(|s| s.relative_error_pct)
                .collect()
        })
        .collect();
    let err_stats: Vec<_> = errors.iter().map(|e| summarize(e).ok()).collect();
    stat_row(&mut out, "mean relative error %", &err_stats.iter().map(|s| s.map(|s| s.mean)).collect::<Vec<_>>(), 2);
    stat_row(
        &mut out,
        "max relative error %",
        &errors
            .iter()
            .map(|e| e.iter().copied().reduce(f64::max))
            .collect::<Vec<_>>(),
        2,
    );
    stat_row(&mut out, "stddev", &err_stats.iter().map(|s| s.map(|s| s.stddev)).collect::<Vec<_>>(), 2);
    stat_row(&mut out, "variance", &err_stats.iter().map(|s| s.map(|s| s.variance)).collect::<Vec<_>>(), 2);

    out.push('\n');
    let _ = writeln!(out, "Best known solutions reached");
    let _ = write!(out, "{:<28}", "");
    for a in &algorithms {
        let _ = write!(out, "{:>14}", a.tag());
    }
    out.push('\n');
    let hits: Vec<(usize, f64)> = algorithms
        .iter()
        .map(|&a| bks_hits(summaries.iter().filter(|s| s.algorithm == a && s.bks.is_some())))
        .collect();
    stat_row(&mut out, "instances at BKS", &hits.iter().map(|h| Some(h.0 as f64)).collect::<Vec<_>>(), 0);
    stat_row(&mut out, "percent at BKS %", &hits.iter().map(|h| Some(h.1)).collect::<Vec<_>>(), 2);

    out.push('\n');
    let _ = writeln!(out, "Evaluations to best over all runs");
    let _ = write!(out, "{:<28}", "");
    for a in &algorithms {
        let _ = write!(out, "{:>14}", a.tag());
    }
    out.push('\n');
    let evals: Vec<Vec<f64>> = algorithms
        .iter()
        .map(|&a| {
            records
                .iter()
                .filter(|r| r.algorithm == a)
                .map(|r| r.evals_to_best as f64)
                .collect()
        })
        .collect();
    let ev_stats: Vec<_> = evals.iter().map(|e| summarize(e).ok()).collect();
    stat_row(&mut out, "mean evaluations", &ev_stats.iter().map(|s| s.map(|s| s.mean)).collect::<Vec<_>>(), 2);
    stat_row(
        &mut out,
        "max evaluations",
        &evals.iter().map(|e| e.iter().copied().reduce(f64::max)).collect::<Vec<_>>(),
        0,
    );
    stat_row(
        &mut out,
        "min evaluations",
        &evals.iter().map(|e| e.iter().copied().reduce(f64::min)).collect::<Vec<_>>(),
        0,
    );
    stat_row(&mut out, "stddev evaluations", &ev_stats.iter().map(|s| s.map(|s| s.stddev)).collect::<Vec<_>>(), 2);
    stat_row(&mut out, "variance evaluations", &ev_stats.iter().map(|s| s.map(|s| s.variance)).collect::<Vec<_>>(), 2);
    Ok(out)
}

/// Writes `runs.csv`, `summary.csv`, `report.txt` and one best-schedule dump
/// per (instance, algorithm) under `out_dir`.
pub fn write_outputs(outcome: &BenchOutcome, out_dir: &Path) -> Result<()> {
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| Error::Io { path, source }
    };
    let sched_dir = out_dir.join("schedules");
    fs::create_dir_all(&sched_dir).map_err(io_err(&sched_dir))?;
    write_run_records(&outcome.records, &out_dir.join("runs.csv"))?;
    let summaries = summarize_runs(&outcome.records)?;
    let path = out_dir.join("summary.csv");
    fs::write(&path, summary_csv(&summaries)).map_err(io_err(&path))?;
    let path = out_dir.join("report.txt");
    fs::write(&path, render_report(&outcome.records)?).map_err(io_err(&path))?;
    for b in &outcome.best {
        let path = sched_dir.join(format!("{}_{}.txt", b.instance.name(), b.algorithm));
        fs::write(&path, format_schedule_dump(&b.instance, &b.result.best_schedule))
            .map_err(io_err(&path))?;
    }
    Ok(())
}

/// One line per operation, `job step machine start duration`, sorted by
/// machine then start time.
pub fn format_schedule_dump(instance: &Instance, schedule: &Schedule) -> String {
    let mut out = String::new();
    for (machine, ops) in schedule.machine_sequences(instance).iter().enumerate() {
        for &op in ops {
            let _ = writeln!(
                out,
                "{} {} {} {} {}",
                op.job,
                op.step,
                machine,
                schedule.start(instance, op),
                instance.op(op).duration
            );
        }
    }
    out
}

/// Reads a schedule dump back against `instance`. Machines and durations
/// must agree with the instance and every operation must appear once.
pub fn parse_schedule_dump(instance: &Instance, text: &str, path: &Path) -> Result<Schedule> {
    let err = |line: usize, reason: String| Error::Format {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut start: Vec<Option<Time>> = vec![None; instance.num_ops()];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<Time> = raw
            .split_whitespace()
            .map(|t| t.parse::<Time>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| err(line, format!("expected integers, found {raw:?}")))?;
        let [job, step, machine, st, duration] = fields[..] else {
            return Err(err(line, format!("expected 5 fields, found {}", fields.len())));
        };
        if job < 0 || step < 0 || job as usize >= instance.num_jobs() || step as usize >= instance.num_machines() {
            return Err(err(line, format!("no operation (job {job}, step {step}) in the instance")));
        }
        let op = OpRef::new(job as usize, step as usize);
        let expected = instance.op(op);
        if machine != expected.machine as Time || duration != expected.duration {
            return Err(err(
                line,
                format!(
                    "{op} runs on machine {} for {}, dump says machine {machine} for {duration}",
                    expected.machine, expected.duration
                ),
            ));
        }
        let slot = &mut start[instance.op_id(op)];
        if slot.is_some() {
            return Err(err(line, format!("{op} listed twice")));
        }
        *slot = Some(st);
    }
    let missing = start.iter().filter(|s| s.is_none()).count();
    if missing > 0 {
        return Err(err(
            text.lines().count() + 1,
            format!("{missing} operations missing from the dump"),
        ));
    }
    Ok(Schedule::from_starts(instance, start.into_iter().map(Option::unwrap).collect())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{decode_schedule, validate_schedule, Encoding};

    fn two_by_two() -> Instance {
        Instance::new("2x2", vec![vec![(0, 3), (1, 2)], vec![(1, 2), (0, 4)]]).unwrap()
    }

    #[test]
    fn dump_round_trip() {
        let inst = two_by_two();
        let s = decode_schedule(&inst, &Encoding::new(&inst, vec![0, 1, 0, 1]).unwrap()).unwrap();
        let text = format_schedule_dump(&inst, &s);
        assert_eq!(text, "0 0 0 0 3\n1 1 0 3 4\n1 0 1 0 2\n0 1 1 3 2\n");
        let back = parse_schedule_dump(&inst, &text, Path::new("d")).unwrap();
        assert_eq!(back, s);
        assert!(validate_schedule(&inst, &back).unwrap().is_empty());
    }

    #[test]
    fn dump_errors_carry_line_numbers() {
        let inst = two_by_two();
        let p = Path::new("d");
        let truncated = "0 0 0 0 3\n1 1 0 3 4\n";
        assert!(matches!(parse_schedule_dump(&inst, truncated, p), Err(Error::Format { line: 3, .. })));
        let short_line = "0 0 0 0 3\n1 1 0 3\n";
        assert!(matches!(parse_schedule_dump(&inst, short_line, p), Err(Error::Format { line: 2, .. })));
        let wrong_machine = "0 0 1 0 3\n";
        assert!(matches!(parse_schedule_dump(&inst, wrong_machine, p), Err(Error::Format { line: 1, .. })));
        let dup = "0 0 0 0 3\n0 0 0 0 3\n";
        assert!(matches!(parse_schedule_dump(&inst, dup, p), Err(Error::Format { line: 2, .. })));
    }

    #[test]
    fn config_text_and_overrides() {
        let mut c = BenchConfig::default();
        c.apply_text(
            "# sweep\nruns = 5\nseed=7\nalgorithms = eas\neas.alpha = 0.3\nclonalg.affinity_mode = normalized\neas.num_ants = auto\n",
        )
        .unwrap();
        assert_eq!((c.runs, c.base_seed), (5, 7));
        assert_eq!(c.algorithms, vec![Algorithm::Eas]);
        assert_eq!(c.eas.alpha, 0.3);
        assert_eq!(c.eas.num_ants, None);
        assert_eq!(c.clonalg.affinity_mode, AffinityMode::Normalized);
        c.apply("eas.alpha", "0.5").unwrap();
        assert_eq!(c.eas.alpha, 0.5);
        assert!(c.apply("eas.nope", "1").is_err());
        assert!(c.apply("runs", "x").is_err());
        assert!(matches!(c.apply_text("runs 5"), Err(Error::Format { line: 1, .. })));
    }

    #[test]
    fn config_rejects_zero_runs() {
        let c = BenchConfig {
            runs: 0,
            instances: vec![PathBuf::from("x")],
            ..Default::default()
        };
        assert!(c.validate().is_err());
    }
}
