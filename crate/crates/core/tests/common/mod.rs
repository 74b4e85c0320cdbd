//! Test-only oracles and fixtures. Nothing here calls the decoder.

#![allow(dead_code)]

use std::path::PathBuf;

use jssp_bio::io::{load_instance, ParseOptions};
use jssp_bio::{Instance, Time};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/lawrence")
        .join(format!("{}.txt", name.to_ascii_lowercase()))
}

pub fn lawrence(name: &str) -> Instance {
    load_instance(&fixture(name), ParseOptions::default()).unwrap()
}

pub fn two_by_two() -> Instance {
    Instance::new("2x2", vec![vec![(0, 3), (1, 2)], vec![(1, 2), (0, 4)]]).unwrap()
}

/// Random instance with `jobs` x `machines`, durations in 1..=max_duration.
pub fn random_instance<R: Rng>(rng: &mut R, jobs: usize, machines: usize, max_duration: Time) -> Instance {
    let rows = (0..jobs)
        .map(|_| {
            let mut order: Vec<usize> = (0..machines).collect();
            order.shuffle(rng);
            order
                .into_iter()
                .map(|m| (m, rng.gen_range(1..=max_duration)))
                .collect()
        })
        .collect();
    Instance::new("random", rows).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Longest-path makespan of the disjunctive graph with the given machine
/// orders, or `None` when the orders create a cycle.
fn orders_makespan(inst: &Instance, orders: &[&Vec<usize>]) -> Option<Time> {
    let m = inst.num_machines();
    let n = inst.num_ops();
    // op id = job * m + step
    let mut step_on = vec![vec![0usize; m]; inst.num_jobs()];
    for (j, job) in inst.jobs().enumerate() {
        for (k, op) in job.iter().enumerate() {
            step_on[j][op.machine] = k;
        }
    }
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for j in 0..inst.num_jobs() {
        for k in 1..m {
            succ[j * m + k - 1].push(j * m + k);
            indeg[j * m + k] += 1;
        }
    }
    for (machine, order) in orders.iter().enumerate() {
        for w in order.windows(2) {
            let a = w[0] * m + step_on[w[0]][machine];
            let b = w[1] * m + step_on[w[1]][machine];
            succ[a].push(b);
            indeg[b] += 1;
        }
    }
    let mut start = vec![0 as Time; n];
    let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    let mut makespan = 0;
    while let Some(a) = ready.pop() {
        seen += 1;
        let end = start[a] + inst.op_by_id(a).duration;
        makespan = makespan.max(end);
        for &b in &succ[a] {
            start[b] = start[b].max(end);
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.push(b);
            }
        }
    }
    (seen == n).then_some(makespan)
}

/// Exact optimum by enumerating every combination of machine orders.
pub fn optimal_makespan(inst: &Instance) -> Time {
    let perms = permutations(inst.num_jobs());
    let machines = inst.num_machines();
    let mut idx = vec![0usize; machines];
    let mut best = Time::MAX;
    loop {
        let orders: Vec<&Vec<usize>> = idx.iter().map(|&i| &perms[i]).collect();
        if let Some(c) = orders_makespan(inst, &orders) {
            best = best.min(c);
        }
        let mut k = 0;
        loop {
            if k == machines {
                return best;
            }
            idx[k] += 1;
            if idx[k] < perms.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Every distinct job-repetition sequence for the instance.
pub fn all_encodings(inst: &Instance) -> Vec<Vec<usize>> {
    fn rec(left: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.iter().all(|&c| c == 0) {
            out.push(cur.clone());
            return;
        }
        for j in 0..left.len() {
            if left[j] > 0 {
                left[j] -= 1;
                cur.push(j);
                rec(left, cur, out);
                cur.pop();
                left[j] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![inst.num_machines(); inst.num_jobs()], &mut Vec::new(), &mut out);
    out
}

/// Two-pass mean and sample variance.
pub fn two_pass(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = if values.len() > 1 {
        values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    (mean, var)
}
