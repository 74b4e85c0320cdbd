//! Job-shop problem model: instances, the job-repetition encoding shared by
//! both solvers, the semi-active decoder and the feasibility checker.
//!
//! Operations are addressed either by [`OpRef`] (job, step) or by a dense
//! operation id `job * num_machines + step`, which is what the hot loops use.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{EncodingError, InstanceError, ScheduleError};

/// Integer time unit used for durations, start times and makespans.
pub type Time = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Operation {
    pub machine: usize,
    pub duration: Time,
}

/// Position of an operation inside its job's technological order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpRef {
    pub job: usize,
    pub step: usize,
}

impl OpRef {
    pub fn new(job: usize, step: usize) -> Self {
        Self { job, step }
    }
}

impl fmt::Display for OpRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(J{}, step {})", self.job, self.step)
    }
}

/// A job-shop instance. Every job visits every machine exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    name: String,
    num_jobs: usize,
    num_machines: usize,
    ops: Vec<Operation>,
}

impl Instance {
    /// Builds an instance from per-job `(machine, duration)` rows, checking
    /// every structural invariant.
    pub fn new(
        name: impl Into<String>,
        jobs: Vec<Vec<(usize, Time)>>,
    ) -> Result<Self, InstanceError> {
        let num_jobs = jobs.len();
        let num_machines = jobs.first().map_or(0, Vec::len);
        if num_jobs == 0 || num_machines == 0 {
            return Err(InstanceError::Empty {
                jobs: num_jobs,
                machines: num_machines,
            });
        }
        let mut ops = Vec::with_capacity(num_jobs * num_machines);
        let mut seen = vec![false; num_machines];
        for (job, row) in jobs.into_iter().enumerate() {
            if row.len() != num_machines {
                return Err(InstanceError::JobLength {
                    job,
                    expected: num_machines,
                    found: row.len(),
                });
            }
            seen.iter_mut().for_each(|s| *s = false);
            for (step, (machine, duration)) in row.into_iter().enumerate() {
                if machine >= num_machines {
                    return Err(InstanceError::MachineOutOfRange {
                        job,
                        step,
                        machine,
                        machines: num_machines,
                    });
                }
                if seen[machine] {
                    return Err(InstanceError::DuplicateMachine { job, machine });
                }
                seen[machine] = true;
                if duration < 1 {
                    return Err(InstanceError::NonPositiveDuration {
                        job,
                        step,
                        duration,
                    });
                }
                ops.push(Operation { machine, duration });
            }
        }
        Ok(Self {
            name: name.into(),
            num_jobs,
            num_machines,
            ops,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_jobs(&self) -> usize {
        self.num_jobs
    }

    pub fn num_machines(&self) -> usize {
        self.num_machines
    }

    /// Total operation count, `num_jobs * num_machines`.
    pub fn num_ops(&self) -> usize {
        self.ops.len()
    }

    #[inline]
    pub fn op_id(&self, op: OpRef) -> usize {
        op.job * self.num_machines + op.step
    }

    #[inline]
    pub fn op_ref(&self, id: usize) -> OpRef {
        OpRef::new(id / self.num_machines, id % self.num_machines)
    }

    #[inline]
    pub fn op(&self, op: OpRef) -> Operation {
        self.ops[self.op_id(op)]
    }

    #[inline]
    pub fn op_by_id(&self, id: usize) -> Operation {
        self.ops[id]
    }

    /// The technological sequence of `job`.
    pub fn job(&self, job: usize) -> &[Operation] {
        let m = self.num_machines;
        &self.ops[job * m..(job + 1) * m]
    }

    pub fn jobs(&self) -> impl Iterator<Item = &[Operation]> {
        self.ops.chunks(self.num_machines)
    }

    /// Sum of durations from `op.step` to the end of its job.
    pub fn remaining_work(&self, op: OpRef) -> Time {
        self.job(op.job)[op.step..].iter().map(|o| o.duration).sum()
    }
}

/// Job-repetition permutation: job `j` appears `num_machines` times and its
/// k-th occurrence stands for the k-th operation of job `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Encoding(Vec<usize>);

impl Encoding {
    /// Wraps a raw sequence and checks it against `instance`.
    pub fn new(instance: &Instance, seq: Vec<usize>) -> Result<Self, EncodingError> {
        check_sequence(instance, &seq)?;
        Ok(Self(seq))
    }

    /// Wraps a sequence without checking it. [`decode_schedule`] still checks.
    pub fn from_vec_unchecked(seq: Vec<usize>) -> Self {
        Self(seq)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    pub fn check(&self, instance: &Instance) -> Result<(), EncodingError> {
        check_sequence(instance, &self.0)
    }

    /// Converts an ordered list of operations (each job's steps in
    /// increasing order) into the equivalent encoding.
    pub fn from_route(route: &[OpRef]) -> Self {
        Self(route.iter().map(|op| op.job).collect())
    }

    /// Operation ids in sequence order.
    pub fn op_ids<'a>(&'a self, instance: &Instance) -> impl Iterator<Item = usize> + 'a {
        let m = instance.num_machines();
        let mut next = vec![0usize; instance.num_jobs()];
        self.0.iter().map(move |&job| {
            let id = job * m + next[job];
            next[job] += 1;
            id
        })
    }

    pub(crate) fn swap(&mut self, a: usize, b: usize) {
        self.0.swap(a, b);
    }
}

fn check_sequence(instance: &Instance, seq: &[usize]) -> Result<(), EncodingError> {
    let jobs = instance.num_jobs();
    let expected = instance.num_ops();
    if seq.len() != expected {
        return Err(EncodingError::WrongLength {
            expected,
            found: seq.len(),
        });
    }
    let mut counts = vec![0usize; jobs];
    for (position, &job) in seq.iter().enumerate() {
        if job >= jobs {
            return Err(EncodingError::JobOutOfRange {
                position,
                job,
                jobs,
            });
        }
        counts[job] += 1;
    }
    for (job, &found) in counts.iter().enumerate() {
        if found != instance.num_machines() {
            return Err(EncodingError::WrongCount {
                job,
                expected: instance.num_machines(),
                found,
            });
        }
    }
    Ok(())
}

/// Start time per operation id plus the claimed makespan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    start: Vec<Time>,
    makespan: Time,
}

impl Schedule {
    /// Builds a schedule whose makespan is computed from `start`.
    pub fn from_starts(instance: &Instance, start: Vec<Time>) -> Result<Self, ScheduleError> {
        if start.len() != instance.num_ops() {
            return Err(ScheduleError::MissingOperations {
                expected: instance.num_ops(),
                found: start.len(),
            });
        }
        let makespan = completion_max(instance, &start);
        Ok(Self { start, makespan })
    }

    /// Builds a schedule carrying an externally claimed makespan, which
    /// [`validate_schedule`] cross-checks.
    pub fn with_makespan(start: Vec<Time>, makespan: Time) -> Self {
        Self { start, makespan }
    }

    pub fn start(&self, instance: &Instance, op: OpRef) -> Time {
        self.start[instance.op_id(op)]
    }

    pub fn starts(&self) -> &[Time] {
        &self.start
    }

    pub fn makespan(&self) -> Time {
        self.makespan
    }

    /// Operations grouped per machine, each group sorted by start time.
    pub fn machine_sequences(&self, instance: &Instance) -> Vec<Vec<OpRef>> {
        let mut per_machine = vec![Vec::with_capacity(instance.num_jobs()); instance.num_machines()];
        for id in 0..instance.num_ops() {
            per_machine[instance.op_by_id(id).machine].push(id);
        }
        per_machine
            .into_iter()
            .map(|mut ids| {
                ids.sort_by_key(|&id| (self.start[id], id));
                ids.into_iter().map(|id| instance.op_ref(id)).collect()
            })
            .collect()
    }
}

fn completion_max(instance: &Instance, start: &[Time]) -> Time {
    start
        .iter()
        .enumerate()
        .map(|(id, &s)| s + instance.op_by_id(id).duration)
        .max()
        .unwrap_or(0)
}

/// Reusable scratch space for decoding encodings without allocating.
#[derive(Debug, Clone)]
pub struct Decoder {
    num_machines: usize,
    next_step: Vec<usize>,
    job_ready: Vec<Time>,
    machine_ready: Vec<Time>,
}

impl Decoder {
    pub fn new(instance: &Instance) -> Self {
        Self {
            num_machines: instance.num_machines(),
            next_step: vec![0; instance.num_jobs()],
            job_ready: vec![0; instance.num_jobs()],
            machine_ready: vec![0; instance.num_machines()],
        }
    }

    fn reset(&mut self) {
        self.next_step.iter_mut().for_each(|s| *s = 0);
        self.job_ready.iter_mut().for_each(|t| *t = 0);
        self.machine_ready.iter_mut().for_each(|t| *t = 0);
    }

    /// Semi-active makespan of `enc`. The encoding must be valid for the
    /// instance this decoder was built for.
    pub fn makespan(&mut self, instance: &Instance, enc: &Encoding) -> Time {
        self.run(instance, enc, |_, _| {})
    }

    /// Decodes `enc`, writing each operation's start time into `start`.
    pub fn decode_into(&mut self, instance: &Instance, enc: &Encoding, start: &mut [Time]) -> Time {
        self.run(instance, enc, |id, t| start[id] = t)
    }

    #[inline]
    fn run(
        &mut self,
        instance: &Instance,
        enc: &Encoding,
        mut emit: impl FnMut(usize, Time),
    ) -> Time {
        debug_assert!(enc.check(instance).is_ok());
        self.reset();
        let mut makespan = 0;
        for &job in enc.as_slice() {
            let id = job * self.num_machines + self.next_step[job];
            self.next_step[job] += 1;
            let op = instance.op_by_id(id);
            let start = self.job_ready[job].max(self.machine_ready[op.machine]);
            let end = start + op.duration;
            self.job_ready[job] = end;
            self.machine_ready[op.machine] = end;
            makespan = makespan.max(end);
            emit(id, start);
        }
        makespan
    }
}

/// Semi-active decoding: scanning left to right, each operation starts as
/// soon as both its job predecessor and its machine are free.
pub fn decode_schedule(instance: &Instance, enc: &Encoding) -> Result<Schedule, EncodingError> {
    enc.check(instance)?;
    let mut start = vec![0; instance.num_ops()];
    let makespan = Decoder::new(instance).decode_into(instance, enc, &mut start);
    Ok(Schedule { start, makespan })
}

/// A single broken constraint found by [`validate_schedule`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NegativeStart { op: OpRef, start: Time },
    /// `op` starts before its job predecessor completes.
    Precedence {
        op: OpRef,
        start: Time,
        earliest: Time,
    },
    /// Two operations overlap on `machine`.
    Overlap {
        machine: usize,
        first: OpRef,
        second: OpRef,
    },
    MakespanMismatch { claimed: Time, actual: Time },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegativeStart { op, start } => {
                write!(f, "negative start {start} for {op}")
            }
            Violation::Precedence { op, start, earliest } => write!(
                f,
                "precedence: {op} starts at {start} before its predecessor completes at {earliest}"
            ),
            Violation::Overlap {
                machine,
                first,
                second,
            } => write!(f, "overlap on machine {machine}: {first} and {second}"),
            Violation::MakespanMismatch { claimed, actual } => {
                write!(f, "makespan mismatch: claimed {claimed}, actual {actual}")
            }
        }
    }
}

/// Lists every violated constraint of `sched`; an empty list means feasible.
pub fn validate_schedule(
    instance: &Instance,
    sched: &Schedule,
) -> Result<Vec<Violation>, ScheduleError> {
    let n = instance.num_ops();
    if sched.start.len() != n {
        return Err(ScheduleError::MissingOperations {
            expected: n,
            found: sched.start.len(),
        });
    }
    let mut violations = Vec::new();
    for id in 0..n {
        if sched.start[id] < 0 {
            violations.push(Violation::NegativeStart {
                op: instance.op_ref(id),
                start: sched.start[id],
            });
        }
    }
    for job in 0..instance.num_jobs() {
        for step in 1..instance.num_machines() {
            let prev = OpRef::new(job, step - 1);
            let op = OpRef::new(job, step);
            let earliest = sched.start(instance, prev) + instance.op(prev).duration;
            let start = sched.start(instance, op);
            if start < earliest {
                violations.push(Violation::Precedence { op, start, earliest });
            }
        }
    }
    for (machine, ops) in sched.machine_sequences(instance).into_iter().enumerate() {
        for (i, &a) in ops.iter().enumerate() {
            let a_end = sched.start(instance, a) + instance.op(a).duration;
            for &b in &ops[i + 1..] {
                // sorted by start, so later entries cannot overlap once one starts after a ends
                if sched.start(instance, b) >= a_end {
                    break;
                }
                violations.push(Violation::Overlap {
                    machine,
                    first: a,
                    second: b,
                });
            }
        }
    }
    let actual = completion_max(instance, &sched.start);
    if actual != sched.makespan {
        violations.push(Violation::MakespanMismatch {
            claimed: sched.makespan,
            actual,
        });
    }
    Ok(violations)
}

/// Largest machine load or job length; no feasible schedule is shorter.
pub fn makespan_lower_bound(instance: &Instance) -> Time {
    let mut machine_load = vec![0; instance.num_machines()];
    let mut longest_job = 0;
    for job in instance.jobs() {
        let mut total = 0;
        for op in job {
            machine_load[op.machine] += op.duration;
            total += op.duration;
        }
        longest_job = longest_job.max(total);
    }
    machine_load.into_iter().max().unwrap_or(0).max(longest_job)
}

/// Uniform shuffle of the job-repetition multiset.
pub fn random_encoding<R: Rng + ?Sized>(instance: &Instance, rng: &mut R) -> Encoding {
    let mut seq: Vec<usize> = (0..instance.num_jobs())
        .flat_map(|j| std::iter::repeat(j).take(instance.num_machines()))
        .collect();
    seq.shuffle(rng);
    Encoding(seq)
}
