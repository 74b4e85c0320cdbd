//! Clonal selection (CLONALG) over job-repetition encodings.
//!
//! Each generation ranks the population by makespan, clones the selected
//! antibodies, hypermutates each clone with a probability that falls as the
//! parent's affinity rises, lets the best clones displace the worst
//! antibodies and finally swaps a slice of the next-worst antibodies for
//! fresh random ones. The population best is never displaced.

use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{random_encoding, Decoder, Encoding, Instance, Time};
use crate::solver::{BestTracker, SolverResult};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum AffinityMode {
    /// `1 - makespan / range`; negative for realistic makespans.
    #[default]
    Literal,
    /// `(max - makespan) / range`, in `[0, 1]`.
    Normalized,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClonalgParams {
    pub pop_size: usize,
    pub generations: usize,
    pub clone_factor: f64,
    pub mutation_factor: f64,
    pub random_cell_fraction: f64,
    /// Worst antibodies replaced by clones each generation; `None` means the
    /// random-cell count.
    pub replace_worst: Option<usize>,
    /// Number of best antibodies that get cloned; `None` means all of them.
    pub select: Option<usize>,
    pub affinity_mode: AffinityMode,
}

impl Default for ClonalgParams {
    fn default() -> Self {
        Self {
            pop_size: 100,
            generations: 300,
            clone_factor: 0.1,
            mutation_factor: 0.1,
            random_cell_fraction: 0.1,
            replace_worst: None,
            select: None,
            affinity_mode: AffinityMode::Literal,
        }
    }
}

impl ClonalgParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.pop_size < 2 {
            return bad(format!("clonalg.pop_size must be at least 2, got {}", self.pop_size));
        }
        if !(self.clone_factor > 0.0 && self.clone_factor.is_finite()) {
            return bad(format!(
                "clonalg.clone_factor must be positive, got {}",
                self.clone_factor
            ));
        }
        if !self.mutation_factor.is_finite() {
            return bad("clonalg.mutation_factor must be finite".into());
        }
        if !(0.0..=1.0).contains(&self.random_cell_fraction) {
            return bad(format!(
                "clonalg.random_cell_fraction must be in [0, 1], got {}",
                self.random_cell_fraction
            ));
        }
        if let Some(d) = self.replace_worst {
            if d >= self.pop_size {
                return bad(format!(
                    "clonalg.replace_worst must be below pop_size ({}), got {d}",
                    self.pop_size
                ));
            }
        }
        if let Some(n) = self.select {
            if n == 0 || n > self.pop_size {
                return bad(format!("clonalg.select must be in 1..={}, got {n}", self.pop_size));
            }
        }
        Ok(())
    }

    /// Antibodies that spawn clones each generation.
    pub fn selected(&self) -> usize {
        self.select.unwrap_or(self.pop_size)
    }

    fn nominal_random_cells(&self) -> usize {
        (self.random_cell_fraction * self.pop_size as f64).round() as usize
    }

    /// Worst antibodies replaced by clones each generation.
    pub fn replaced(&self) -> usize {
        self.replace_worst
            .unwrap_or_else(|| self.nominal_random_cells())
            .min(self.pop_size - 1)
    }

    /// Random antibodies injected each generation; capped so the population
    /// best always survives.
    pub fn random_cells(&self) -> usize {
        self.nominal_random_cells()
            .min(self.pop_size - 1 - self.replaced())
    }

    /// Exact number of decodes a run performs without a budget.
    pub fn evaluation_count(&self) -> u64 {
        let per_gen = self.selected() * clone_count(self) + self.random_cells();
        (self.pop_size + self.generations * per_gen) as u64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Antibody {
    pub enc: Encoding,
    pub makespan: Time,
    pub affinity: f64,
}

/// Affinity of `makespan` within a population spanning `[pop_min, pop_max]`.
pub fn affinity(makespan: Time, pop_min: Time, pop_max: Time, mode: AffinityMode) -> f64 {
    let range = pop_max - pop_min;
    if range == 0 {
        return 1.0;
    }
    match mode {
        AffinityMode::Literal => 1.0 - makespan as f64 / range as f64,
        AffinityMode::Normalized => (pop_max - makespan) as f64 / range as f64,
    }
}

/// Clones per selected antibody: `round(clone_factor * pop_size)`, at least 1.
pub fn clone_count(params: &ClonalgParams) -> usize {
    ((params.clone_factor * params.pop_size as f64).round() as usize).max(1)
}

pub fn mutation_probability(params: &ClonalgParams, affinity: f64) -> f64 {
    (-params.mutation_factor * affinity).exp().min(1.0)
}

/// With probability `p`, swaps two positions holding different jobs.
pub fn hypermutate<R: Rng + ?Sized>(mut enc: Encoding, p: f64, rng: &mut R) -> Encoding {
    let draw: f64 = rng.gen();
    if draw >= p {
        return enc;
    }
    let seq = enc.as_slice();
    let n = seq.len();
    if n < 2 || seq.iter().all(|&j| j == seq[0]) {
        return enc;
    }
    let a = rng.gen_range(0..n);
    let b = loop {
        let b = rng.gen_range(0..n);
        if seq[b] != seq[a] {
            break b;
        }
    };
    enc.swap(a, b);
    enc
}

fn refresh_affinities(pop: &mut [Antibody], mode: AffinityMode) {
    let min = pop.iter().map(|a| a.makespan).min().unwrap_or(0);
    let max = pop.iter().map(|a| a.makespan).max().unwrap_or(0);
    for ab in pop {
        ab.affinity = affinity(ab.makespan, min, max, mode);
    }
}

pub fn run_clonalg<R: Rng + ?Sized>(
    instance: &Instance,
    params: &ClonalgParams,
    rng: &mut R,
    eval_budget: Option<u64>,
) -> Result<SolverResult> {
    params.validate()?;
    let n = params.pop_size;
    let clones_each = clone_count(params);
    let selected = params.selected();
    let replaced = params.replaced();
    let randoms = params.random_cells();

    let mut decoder = Decoder::new(instance);
    let mut tracker = BestTracker::new(eval_budget);
    let mut history = Vec::with_capacity(params.generations);

    let mut pop: Vec<Antibody> = Vec::with_capacity(n);
    for _ in 0..n {
        let enc = random_encoding(instance, rng);
        let makespan = decoder.makespan(instance, &enc);
        tracker.record(&enc, makespan);
        pop.push(Antibody {
            enc,
            makespan,
            affinity: 0.0,
        });
        if tracker.exhausted() {
            break;
        }
    }

    let mut clones: Vec<(Encoding, Time)> = Vec::with_capacity(selected * clones_each);
    for _ in 0..params.generations {
        if tracker.exhausted() || pop.len() < n {
            break;
        }
        refresh_affinities(&mut pop, params.affinity_mode);
        pop.sort_by_key(|a| a.makespan);

        clones.clear();
        'clone: for parent in &pop[..selected] {
            let p = mutation_probability(params, parent.affinity);
            for _ in 0..clones_each {
                if tracker.exhausted() {
                    break 'clone;
                }
                let enc = hypermutate(parent.enc.clone(), p, rng);
                let makespan = decoder.makespan(instance, &enc);
                tracker.record(&enc, makespan);
                clones.push((enc, makespan));
            }
        }
        clones.sort_by_key(|c| c.1);

        // best clones against the worst antibodies, pairwise
        for (k, (enc, makespan)) in clones.drain(..).take(replaced).enumerate() {
            let slot = &mut pop[n - 1 - k];
            if makespan < slot.makespan {
                *slot = Antibody {
                    enc,
                    makespan,
                    affinity: 0.0,
                };
            }
        }

        for k in 0..randoms {
            if tracker.exhausted() {
                break;
            }
            let enc = random_encoding(instance, rng);
            let makespan = decoder.makespan(instance, &enc);
            tracker.record(&enc, makespan);
            pop[n - 1 - replaced - k] = Antibody {
                enc,
                makespan,
                affinity: 0.0,
            };
        }

        debug_assert_eq!(pop.len(), n);
        debug_assert!(pop.iter().any(|a| Some(a.makespan) == tracker.best_makespan()));
        history.push(tracker.best_makespan().expect("evaluated"));
    }
    Ok(tracker.finish(instance, history))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn default_params_match_table() {
        let p = ClonalgParams::default();
        assert_eq!((p.pop_size, p.generations), (100, 300));
        assert_eq!((p.clone_factor, p.mutation_factor, p.random_cell_fraction), (0.1, 0.1, 0.1));
        assert_eq!((p.selected(), p.replaced(), p.random_cells()), (100, 10, 10));
        assert_eq!(p.evaluation_count(), 100 + 300 * (100 * 10 + 10));
    }

    #[test]
    fn affinity_modes() {
        assert_eq!(affinity(666, 666, 666, AffinityMode::Literal), 1.0);
        assert_eq!(affinity(666, 666, 666, AffinityMode::Normalized), 1.0);
        assert_eq!(affinity(600, 600, 800, AffinityMode::Literal), -2.0);
        assert_eq!(affinity(800, 600, 800, AffinityMode::Literal), -3.0);
        assert_eq!(affinity(600, 600, 800, AffinityMode::Normalized), 1.0);
        assert_eq!(affinity(800, 600, 800, AffinityMode::Normalized), 0.0);
    }

    #[test]
    fn clone_counts() {
        let with = |clone_factor, pop_size| ClonalgParams {
            clone_factor,
            pop_size,
            ..Default::default()
        };
        assert_eq!(clone_count(&with(0.1, 100)), 10);
        assert_eq!(clone_count(&with(0.1, 5)), 1);
        assert_eq!(clone_count(&with(1.0, 7)), 7);
    }

    #[test]
    fn mutation_probabilities() {
        let p = ClonalgParams::default();
        assert_eq!(mutation_probability(&p, 0.0), 1.0);
        assert!((mutation_probability(&p, 1.0) - 0.904_837).abs() < 5e-7);
        assert_eq!(mutation_probability(&p, -2.0), 1.0);
        assert!(mutation_probability(&p, 2.0) < mutation_probability(&p, 1.0));
    }

    #[test]
    fn hypermutation_swaps_exactly_once() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let base = Encoding::from_vec_unchecked(vec![0, 1, 0, 1]);
        assert_eq!(hypermutate(base.clone(), 0.0, &mut rng), base);
        for _ in 0..50 {
            let out = hypermutate(base.clone(), 1.0, &mut rng);
            let diff = out
                .as_slice()
                .iter()
                .zip(base.as_slice())
                .filter(|(a, b)| a != b)
                .count();
            assert_eq!(diff, 2);
            let mut sorted = out.into_inner();
            sorted.sort_unstable();
            assert_eq!(sorted, vec![0, 0, 1, 1]);
        }
        let single = Encoding::from_vec_unchecked(vec![0]);
        assert_eq!(hypermutate(single.clone(), 1.0, &mut rng), single);
    }

    #[test]
    fn rejects_bad_params() {
        for p in [
            ClonalgParams { pop_size: 1, ..Default::default() },
            ClonalgParams { clone_factor: 0.0, ..Default::default() },
            ClonalgParams { random_cell_fraction: 1.5, ..Default::default() },
            ClonalgParams { replace_worst: Some(100), ..Default::default() },
            ClonalgParams { select: Some(0), ..Default::default() },
        ] {
            assert!(p.validate().is_err(), "{p:?}");
        }
    }

    #[test]
    fn random_cells_leave_room_for_the_best() {
        let p = ClonalgParams {
            pop_size: 4,
            random_cell_fraction: 1.0,
            ..Default::default()
        };
        assert_eq!(p.replaced(), 3);
        assert_eq!(p.random_cells(), 0);
    }

    #[test]
    fn single_operation_run() {
        let inst = Instance::new("x", vec![vec![(0, 5)]]).unwrap();
        let params = ClonalgParams::default();
        let r = run_clonalg(&inst, &params, &mut ChaCha8Rng::seed_from_u64(0), None).unwrap();
        assert_eq!(r.best_makespan, 5);
        assert!(r.evals_to_best <= 100);
        assert_eq!(r.total_evals, params.evaluation_count());
    }

    #[test]
    fn budget_is_respected() {
        let inst = Instance::new("x", vec![vec![(0, 2), (1, 3)], vec![(1, 2), (0, 4)]]).unwrap();
        let r = run_clonalg(
            &inst,
            &ClonalgParams::default(),
            &mut ChaCha8Rng::seed_from_u64(0),
            Some(150),
        )
        .unwrap();
        assert_eq!(r.total_evals, 150);
    }
}
