//! Quality and effort statistics over repeated runs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::io::{bks_lookup, RunRecord};
use crate::model::Time;
use crate::solver::Algorithm;

/// Percentage by which `cmax` exceeds `bks`.
pub fn relative_error(cmax: Time, bks: Time) -> f64 {
    100.0 * (cmax - bks) as f64 / bks as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    /// Sample variance (n - 1 denominator); 0 for a single value.
    pub variance: f64,
    pub stddev: f64,
}

/// Mean, sample variance and standard deviation, computed in one pass with
/// Welford's recurrence.
pub fn summarize(values: &[f64]) -> Result<Summary> {
    if values.is_empty() {
        return Err(Error::Empty("cannot summarize an empty list"));
    }
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (i, &x) in values.iter().enumerate() {
        let delta = x - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (x - mean);
    }
    let n = values.len();
    let variance = if n > 1 { m2 / (n - 1) as f64 } else { 0.0 };
    Ok(Summary {
        mean,
        variance,
        stddev: variance.sqrt(),
    })
}

/// Per-(instance, algorithm) aggregate over all seeded runs.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSummary {
    pub instance_name: String,
    pub algorithm: Algorithm,
    /// `None` when the instance is not in the Lawrence table.
    pub bks: Option<Time>,
    pub best_cmax: Time,
    pub relative_error_pct: Option<f64>,
    pub runs: usize,
    pub cmax: Summary,
    pub mean_evals_to_best: f64,
    pub max_evals_to_best: u64,
    pub min_evals_to_best: u64,
}

impl InstanceSummary {
    pub fn hit_bks(&self) -> bool {
        self.bks == Some(self.best_cmax)
    }
}

/// Groups records by (instance, algorithm) and aggregates each group. The
/// output is ordered by instance name, then algorithm.
pub fn summarize_runs(records: &[RunRecord]) -> Result<Vec<InstanceSummary>> {
    let mut groups: BTreeMap<(&str, Algorithm), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        groups
            .entry((r.instance.as_str(), r.algorithm))
            .or_default()
            .push(r);
    }
    groups
        .into_iter()
        .map(|((name, algorithm), runs)| {
            let cmax: Vec<f64> = runs.iter().map(|r| r.best_makespan as f64).collect();
            let evals: Vec<f64> = runs.iter().map(|r| r.evals_to_best as f64).collect();
            let best_cmax = runs.iter().map(|r| r.best_makespan).min().expect("non-empty");
            let bks = bks_lookup(name).ok();
            Ok(InstanceSummary {
                instance_name: name.to_string(),
                algorithm,
                bks,
                best_cmax,
                relative_error_pct: bks.map(|b| relative_error(best_cmax, b)),
                runs: runs.len(),
                cmax: summarize(&cmax)?,
                mean_evals_to_best: summarize(&evals)?.mean,
                max_evals_to_best: runs.iter().map(|r| r.evals_to_best).max().expect("non-empty"),
                min_evals_to_best: runs.iter().map(|r| r.evals_to_best).min().expect("non-empty"),
            })
        })
        .collect()
}

/// Number of summaries whose best makespan equals the BKS, and that count
/// as a percentage of all summaries given.
pub fn bks_hits<'a>(summaries: impl IntoIterator<Item = &'a InstanceSummary>) -> (usize, f64) {
    let mut total = 0;
    let mut hits = 0;
    for s in summaries {
        total += 1;
        if s.hit_bks() {
            hits += 1;
        }
    }
    let pct = if total == 0 {
        0.0
    } else {
        100.0 * hits as f64 / total as f64
    };
    (hits, pct)
}
