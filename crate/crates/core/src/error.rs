use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("instance must have at least one job and one machine (got {jobs}x{machines})")]
    Empty { jobs: usize, machines: usize },
    #[error("job {job} has {found} operations, expected {expected}")]
    JobLength {
        job: usize,
        expected: usize,
        found: usize,
    },
    #[error("job {job} step {step} uses machine {machine}, outside 0..{machines}")]
    MachineOutOfRange {
        job: usize,
        step: usize,
        machine: usize,
        machines: usize,
    },
    #[error("job {job} visits machine {machine} more than once")]
    DuplicateMachine { job: usize, machine: usize },
    #[error("job {job} step {step} has non-positive duration {duration}")]
    NonPositiveDuration { job: usize, step: usize, duration: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("encoding has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("position {position} holds job {job}, but the instance has {jobs} jobs")]
    JobOutOfRange {
        position: usize,
        job: usize,
        jobs: usize,
    },
    #[error("job {job} occurs {found} times, expected {expected}")]
    WrongCount {
        job: usize,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("schedule has {found} start times, instance has {expected} operations")]
    MissingOperations { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
    #[error("no header line with two positive integers found")]
    MissingHeader,
    #[error("expected {expected} job rows after the header, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("line {line}: {source}")]
    Instance {
        line: usize,
        #[source]
        source: InstanceError,
    },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown instance {name:?}; known names are {known}")]
    UnknownInstance { name: String, known: String },
    #[error("{0}")]
    InvalidParams(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: line {line}: {reason}")]
    Format {
        path: PathBuf,
        line: usize,
        reason: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
