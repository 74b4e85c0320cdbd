//! Types shared by both metaheuristics.

use std::fmt;
use std::str::FromStr;

use crate::model::{Encoding, Instance, Schedule, Time};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Eas,
    Clonalg,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::Eas, Algorithm::Clonalg];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Eas => "EAS",
            Algorithm::Clonalg => "CLONALG",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "eas" => Ok(Algorithm::Eas),
            "clonalg" => Ok(Algorithm::Clonalg),
            other => Err(format!("unknown algorithm {other:?} (expected eas or clonalg)")),
        }
    }
}

/// Outcome of one seeded solver run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverResult {
    pub best_encoding: Encoding,
    pub best_schedule: Schedule,
    pub best_makespan: Time,
    /// 1-based index of the evaluation that first produced `best_makespan`.
    pub evals_to_best: u64,
    pub total_evals: u64,
    /// Global best makespan after each cycle / generation.
    pub history: Vec<Time>,
}

/// Counts objective evaluations and remembers the first time the global best
/// was reached.
#[derive(Debug)]
pub(crate) struct BestTracker {
    pub evals: u64,
    pub budget: Option<u64>,
    pub best: Option<(Encoding, Time, u64)>,
}

impl BestTracker {
    pub fn new(budget: Option<u64>) -> Self {
        Self {
            evals: 0,
            // at least one evaluation so a best always exists
            budget: budget.map(|b| b.max(1)),
            best: None,
        }
    }

    pub fn exhausted(&self) -> bool {
        self.budget.is_some_and(|b| self.evals >= b)
    }

    /// Records one evaluation. Returns true when it strictly improved the
    /// global best.
    pub fn record(&mut self, enc: &Encoding, makespan: Time) -> bool {
        self.evals += 1;
        match &self.best {
            Some((_, best, _)) if makespan >= *best => false,
            _ => {
                self.best = Some((enc.clone(), makespan, self.evals));
                true
            }
        }
    }

    pub fn best_makespan(&self) -> Option<Time> {
        self.best.as_ref().map(|b| b.1)
    }

    pub fn finish(self, instance: &Instance, history: Vec<Time>) -> SolverResult {
        let (best_encoding, best_makespan, evals_to_best) =
            self.best.expect("a run performs at least one evaluation");
        let best_schedule = crate::model::decode_schedule(instance, &best_encoding)
            .expect("solver encodings are valid by construction");
        debug_assert_eq!(best_schedule.makespan(), best_makespan);
        SolverResult {
            best_encoding,
            best_schedule,
            best_makespan,
            evals_to_best,
            total_evals: self.evals,
            history,
        }
    }
}
