//! Job-shop scheduling with two bio-inspired metaheuristics: an Elitist Ant
//! System ([`eas`]) and a clonal selection algorithm ([`clonalg`]).
//!
//! Both solvers search over the same job-repetition [`Encoding`], decoded
//! into semi-active schedules by [`decode_schedule`]. The [`harness`] module
//! runs the seeded benchmark protocol on Lawrence instances and renders the
//! CSV files and text report.

pub mod clonalg;
pub mod eas;
pub mod error;
pub mod harness;
pub mod io;
pub mod model;
pub mod solver;
pub mod stats;

pub use clonalg::{run_clonalg, AffinityMode, ClonalgParams};
pub use eas::{run_eas, EasParams, Heuristic};
pub use error::{Error, Result};
pub use io::{bks_lookup, parse_instance, RunRecord};
pub use model::{
    decode_schedule, makespan_lower_bound, random_encoding, validate_schedule, Encoding, Instance,
    OpRef, Schedule, Time, Violation,
};
pub use solver::{Algorithm, SolverResult};
