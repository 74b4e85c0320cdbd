//! ORLib-style instance files, the Lawrence best-known-solution table and
//! run-record CSV files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, ParseError, Result};
use crate::model::{Instance, Time};
use crate::solver::Algorithm;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Machine numbers in the file start at 1 instead of 0.
    pub one_based: bool,
}

/// Parses an instance with 0-based machine numbers.
pub fn parse_instance(text: &str, name: &str) -> Result<Instance, ParseError> {
    parse_instance_with(text, name, ParseOptions::default())
}

/// Parses the ORLib job-shop layout: any number of description lines, a
/// `jobs machines` header, then one row of `machine duration` pairs per job.
pub fn parse_instance_with(
    text: &str,
    name: &str,
    opts: ParseOptions,
) -> Result<Instance, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (num_jobs, num_machines) = loop {
        let Some((_, line)) = lines.next() else {
            return Err(ParseError::MissingHeader);
        };
        if let Some(v) = integers(line) {
            if let [j, m] = v[..] {
                if j > 0 && m > 0 {
                    break (j as usize, m as usize);
                }
            }
        }
    };

    let mut jobs = Vec::with_capacity(num_jobs);
    let mut row_lines = Vec::with_capacity(num_jobs);
    for (lineno, line) in lines.by_ref() {
        if jobs.len() == num_jobs {
            break;
        }
        if line.trim().is_empty() {
            continue;
        }
        let values = integers(line).ok_or_else(|| ParseError::Line {
            line: lineno,
            reason: "expected whitespace-separated integers".into(),
        })?;
        if values.len() != 2 * num_machines {
            return Err(ParseError::Line {
                line: lineno,
                reason: format!(
                    "expected {num_machines} (machine, duration) pairs, found {} integers",
                    values.len()
                ),
            });
        }
        let mut row = Vec::with_capacity(num_machines);
        for pair in values.chunks(2) {
            let raw = pair[0];
            let machine = if opts.one_based { raw - 1 } else { raw };
            if machine < 0 || machine as usize >= num_machines {
                return Err(ParseError::Line {
                    line: lineno,
                    reason: format!("machine {raw} outside the {num_machines} machines in the header"),
                });
            }
            if pair[1] < 1 {
                return Err(ParseError::Line {
                    line: lineno,
                    reason: format!("non-positive duration {}", pair[1]),
                });
            }
            row.push((machine as usize, pair[1]));
        }
        jobs.push(row);
        row_lines.push(lineno);
    }
    if jobs.len() != num_jobs {
        return Err(ParseError::RowCount {
            expected: num_jobs,
            found: jobs.len(),
        });
    }
    Instance::new(name, jobs).map_err(|source| {
        let job = match &source {
            crate::error::InstanceError::DuplicateMachine { job, .. }
            | crate::error::InstanceError::JobLength { job, .. }
            | crate::error::InstanceError::MachineOutOfRange { job, .. }
            | crate::error::InstanceError::NonPositiveDuration { job, .. } => *job,
            crate::error::InstanceError::Empty { .. } => 0,
        };
        ParseError::Instance {
            line: row_lines.get(job).copied().unwrap_or(0),
            source,
        }
    })
}

fn integers(line: &str) -> Option<Vec<Time>> {
    let v: Option<Vec<Time>> = line.split_whitespace().map(|t| t.parse().ok()).collect();
    v.filter(|v| !v.is_empty())
}

/// Reads an instance file; the instance is named after the file stem in
/// upper case (`la01.txt` becomes `LA01`).
pub fn load_instance(path: &Path, opts: ParseOptions) -> Result<Instance> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().to_ascii_uppercase())
        .unwrap_or_default();
    parse_instance_with(&text, &name, opts).map_err(|e| Error::Format {
        path: path.to_path_buf(),
        line: match &e {
            ParseError::Line { line, .. } | ParseError::Instance { line, .. } => *line,
            _ => 0,
        },
        reason: e.to_string(),
    })
}

/// Writes `instance` back out in the 0-based layout [`parse_instance`] reads.
pub fn write_instance(instance: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", instance.name());
    let _ = writeln!(out, "{} {}", instance.num_jobs(), instance.num_machines());
    for job in instance.jobs() {
        let row: Vec<String> = job
            .iter()
            .map(|op| format!("{} {}", op.machine, op.duration))
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BksEntry {
    pub instance_name: &'static str,
    pub size: (usize, usize),
    pub bks: Time,
}

const fn bks(instance_name: &'static str, jobs: usize, machines: usize, bks: Time) -> BksEntry {
    BksEntry {
        instance_name,
        size: (jobs, machines),
        bks,
    }
}

/// Best known makespans for LA01-LA40 as used for the relative-error column.
/// LA29 is 1157 here; later work proved 1152 optimal.
pub const LAWRENCE_BKS: [BksEntry; 40] = [
    bks("LA01", 10, 5, 666),
    bks("LA02", 10, 5, 655),
    bks("LA03", 10, 5, 597),
    bks("LA04", 10, 5, 590),
    bks("LA05", 10, 5, 593),
    bks("LA06", 15, 5, 926),
    bks("LA07", 15, 5, 890),
    bks("LA08", 15, 5, 863),
    bks("LA09", 15, 5, 951),
    bks("LA10", 15, 5, 958),
    bks("LA11", 20, 5, 1222),
    bks("LA12", 20, 5, 1039),
    bks("LA13", 20, 5, 1150),
    bks("LA14", 20, 5, 1292),
    bks("LA15", 20, 5, 1207),
    bks("LA16", 10, 10, 945),
    bks("LA17", 10, 10, 784),
    bks("LA18", 10, 10, 848),
    bks("LA19", 10, 10, 842),
    bks("LA20", 10, 10, 902),
    bks("LA21", 15, 10, 1046),
    bks("LA22", 15, 10, 927),
    bks("LA23", 15, 10, 1032),
    bks("LA24", 15, 10, 935),
    bks("LA25", 15, 10, 977),
    bks("LA26", 20, 10, 1218),
    bks("LA27", 20, 10, 1235),
    bks("LA28", 20, 10, 1216),
    bks("LA29", 20, 10, 1157),
    bks("LA30", 20, 10, 1355),
    bks("LA31", 30, 10, 1784),
    bks("LA32", 30, 10, 1850),
    bks("LA33", 30, 10, 1719),
    bks("LA34", 30, 10, 1721),
    bks("LA35", 30, 10, 1888),
    bks("LA36", 15, 15, 1268),
    bks("LA37", 15, 15, 1397),
    bks("LA38", 15, 15, 1196),
    bks("LA39", 15, 15, 1233),
    bks("LA40", 15, 15, 1222),
];

pub fn bks_entry(name: &str) -> Result<&'static BksEntry> {
    LAWRENCE_BKS
        .iter()
        .find(|e| e.instance_name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownInstance {
            name: name.to_string(),
            known: format!(
                "{}..{}",
                LAWRENCE_BKS[0].instance_name,
                LAWRENCE_BKS[LAWRENCE_BKS.len() - 1].instance_name
            ),
        })
}

/// Best known makespan of a Lawrence instance (case-insensitive name).
pub fn bks_lookup(name: &str) -> Result<Time> {
    bks_entry(name).map(|e| e.bks)
}

/// One seeded run of one algorithm on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunRecord {
    pub instance: String,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub best_makespan: Time,
    pub evals_to_best: u64,
    pub total_evals: u64,
    pub wall_time_ms: u64,
}

pub const RUN_RECORD_HEADER: [&str; 7] = [
    "instance",
    "algorithm",
    "seed",
    "best_makespan",
    "evals_to_best",
    "total_evals",
    "wall_time_ms",
];

/// Canonical order of records: instance, then algorithm, then seed.
pub fn sort_records(records: &mut [RunRecord]) {
    records.sort_by(|a, b| {
        (&a.instance, a.algorithm, a.seed).cmp(&(&b.instance, b.algorithm, b.seed))
    });
}

pub fn write_run_records(records: &[RunRecord], path: &Path) -> Result<()> {
    if records.is_empty() {
        return Err(Error::Empty("no run records to write"));
    }
    let mut sorted = records.to_vec();
    sort_records(&mut sorted);
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(RUN_RECORD_HEADER).map_err(csv_err)?;
    for r in &sorted {
        w.write_record([
            r.instance.clone(),
            r.algorithm.tag().to_string(),
            r.seed.to_string(),
            r.best_makespan.to_string(),
            r.evals_to_best.to_string(),
            r.total_evals.to_string(),
            r.wall_time_ms.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_run_records(path: &Path) -> Result<Vec<RunRecord>> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let format_err = |line: usize, reason: String| Error::Format {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    let header = r.headers().map_err(csv_err)?.clone();
    if header.iter().ne(RUN_RECORD_HEADER) {
        return Err(format_err(1, format!("unexpected header {:?}", header.as_slice())));
    }
    let mut out = Vec::new();
    for (i, row) in r.records().enumerate() {
        let line = i + 2;
        let row = row.map_err(csv_err)?;
        if row.len() != RUN_RECORD_HEADER.len() {
            return Err(format_err(line, format!("expected 7 fields, found {}", row.len())));
        }
        let int = |idx: usize| -> Result<u64> {
            row[idx].parse().map_err(|_| {
                format_err(line, format!("{}: not an integer: {:?}", RUN_RECORD_HEADER[idx], &row[idx]))
            })
        };
        out.push(RunRecord {
            instance: row[0].to_string(),
            algorithm: row[1].parse().map_err(|e| format_err(line, e))?,
            seed: int(2)?,
            best_makespan: int(3)? as Time,
            evals_to_best: int(4)?,
            total_evals: int(5)?,
            wall_time_ms: int(6)?,
        });
    }
    Ok(out)
}
