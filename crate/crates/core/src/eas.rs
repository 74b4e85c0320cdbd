//! Elitist Ant System.
//!
//! Ants walk a graph whose nodes are the operations plus a virtual start
//! node. From the current node an ant may move to any operation whose job
//! predecessor is already in its tabu list, choosing with probability
//! proportional to `tau^alpha * eta^beta`. The finished walk is read as a
//! job-repetition encoding and decoded semi-actively.
//!
//! After each cycle every edge keeps a fraction `rho` of its pheromone, each
//! ant adds `Q / L` to the edges of its walk, and the best walk of the cycle
//! receives an extra `e * Q / L_best`. Entries never drop below `tau_min`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{Decoder, Encoding, Instance, OpRef, Time};
use crate::solver::{BestTracker, SolverResult};

/// Visibility measure used as `eta`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Heuristic {
    /// `1 / duration`.
    InverseDuration,
    /// Remaining work of the job from the operation onward.
    MostWorkRemaining,
    /// Prefers operations that can start soonest in the ant's partial
    /// schedule: `1 / (1 + delay)`, where `delay` is the gap to the earliest
    /// possible start among the eligible operations.
    #[default]
    EarliestStart,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EasParams {
    /// Pheromone influence; the heuristic influence is `1 - alpha`.
    pub alpha: f64,
    /// Fraction of pheromone kept from one cycle to the next.
    pub rho: f64,
    pub tau0: f64,
    pub q: f64,
    pub cycles: usize,
    /// Ants per cycle; `None` means one ant per job.
    pub num_ants: Option<usize>,
    /// Elitist weight applied to the cycle-best route.
    pub elite: f64,
    /// Pheromone floor; `None` means `tau0 * 1e-3`.
    pub tau_min: Option<f64>,
    pub heuristic: Heuristic,
}

impl Default for EasParams {
    fn default() -> Self {
        Self {
            alpha: 0.2,
            rho: 0.7,
            tau0: 0.002,
            q: 0.001,
            cycles: 1000,
            num_ants: None,
            elite: 5.0,
            tau_min: None,
            heuristic: Heuristic::EarliestStart,
        }
    }
}

impl EasParams {
    pub fn beta(&self) -> f64 {
        1.0 - self.alpha
    }

    pub fn tau_floor(&self) -> f64 {
        self.tau_min.unwrap_or(self.tau0 * 1e-3)
    }

    pub fn ants_for(&self, instance: &Instance) -> usize {
        self.num_ants.unwrap_or(instance.num_jobs())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return bad(format!("eas.alpha must be in (0, 1], got {}", self.alpha));
        }
        if !(0.0..=1.0).contains(&self.rho) {
            return bad(format!("eas.rho must be in [0, 1], got {}", self.rho));
        }
        if !(self.tau0 > 0.0 && self.tau0.is_finite()) {
            return bad(format!("eas.tau0 must be positive, got {}", self.tau0));
        }
        if !(self.q > 0.0 && self.q.is_finite()) {
            return bad(format!("eas.q must be positive, got {}", self.q));
        }
        if self.cycles == 0 {
            return bad("eas.cycles must be positive".into());
        }
        if self.num_ants == Some(0) {
            return bad("eas.num_ants must be positive".into());
        }
        if !(self.elite >= 0.0 && self.elite.is_finite()) {
            return bad(format!("eas.elite must be non-negative, got {}", self.elite));
        }
        let floor = self.tau_floor();
        if !(floor > 0.0 && floor.is_finite()) {
            return bad(format!("eas.tau_min must be positive, got {floor}"));
        }
        Ok(())
    }
}

/// Pheromone on every directed edge `from -> to`, where `from` ranges over
/// the operations plus the start node and `to` over the operations.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneMatrix {
    num_ops: usize,
    floor: f64,
    tau: Vec<f64>,
}

impl PheromoneMatrix {
    pub fn new(num_ops: usize, tau0: f64, floor: f64) -> Self {
        Self {
            num_ops,
            floor,
            tau: vec![tau0.max(floor); (num_ops + 1) * num_ops],
        }
    }

    pub fn for_instance(instance: &Instance, params: &EasParams) -> Self {
        Self::new(instance.num_ops(), params.tau0, params.tau_floor())
    }

    /// Row index of the virtual start node.
    pub fn start_node(&self) -> usize {
        self.num_ops
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    #[inline]
    pub fn get(&self, from: usize, to: usize) -> f64 {
        self.tau[from * self.num_ops + to]
    }

    pub fn set(&mut self, from: usize, to: usize, value: f64) {
        self.tau[from * self.num_ops + to] = value.max(self.floor);
    }

    pub fn values(&self) -> &[f64] {
        &self.tau
    }

    /// Multiplies every entry by `c`, floor included.
    pub fn scale(&mut self, c: f64) {
        self.floor *= c;
        self.tau.iter_mut().for_each(|t| *t *= c);
    }

    fn add(&mut self, from: usize, to: usize, amount: f64) {
        self.tau[from * self.num_ops + to] += amount;
    }
}

/// Partial route of one ant, together with the partial semi-active
/// schedule it implies.
#[derive(Debug, Clone)]
pub struct AntState {
    tabu: Vec<OpRef>,
    eligible: Vec<OpRef>,
    num_machines: usize,
    job_ready: Vec<Time>,
    machine_ready: Vec<Time>,
}

impl AntState {
    pub fn new(instance: &Instance) -> Self {
        Self {
            tabu: Vec::with_capacity(instance.num_ops()),
            eligible: (0..instance.num_jobs()).map(|j| OpRef::new(j, 0)).collect(),
            num_machines: instance.num_machines(),
            job_ready: vec![0; instance.num_jobs()],
            machine_ready: vec![0; instance.num_machines()],
        }
    }

    pub fn tabu(&self) -> &[OpRef] {
        &self.tabu
    }

    /// Next unscheduled step of every unfinished job, ordered by job.
    pub fn eligible(&self) -> &[OpRef] {
        &self.eligible
    }

    pub fn last(&self) -> Option<OpRef> {
        self.tabu.last().copied()
    }

    pub fn is_complete(&self) -> bool {
        self.eligible.is_empty()
    }

    /// Start time `op` would get if it were appended now.
    #[inline]
    pub fn earliest_start(&self, instance: &Instance, op: OpRef) -> Time {
        self.job_ready[op.job].max(self.machine_ready[instance.op(op).machine])
    }

    /// Appends the `index`-th eligible operation to the route.
    pub fn advance(&mut self, instance: &Instance, index: usize) {
        let op = self.eligible[index];
        let end = self.earliest_start(instance, op) + instance.op(op).duration;
        self.job_ready[op.job] = end;
        self.machine_ready[instance.op(op).machine] = end;
        self.tabu.push(op);
        if op.step + 1 < self.num_machines {
            self.eligible[index].step += 1;
        } else {
            self.eligible.remove(index);
        }
    }

    /// Makespan of the partial schedule built so far.
    pub fn makespan(&self) -> Time {
        self.job_ready.iter().copied().max().unwrap_or(0)
    }

    pub fn into_encoding(self) -> Encoding {
        Encoding::from_route(&self.tabu)
    }
}

/// Static visibility of `op`. [`Heuristic::EarliestStart`] depends on the
/// ant's partial schedule and is evaluated by [`step_heuristic`] instead;
/// here it returns 1.
pub fn heuristic_info(instance: &Instance, op: OpRef, mode: Heuristic) -> f64 {
    match mode {
        Heuristic::InverseDuration => 1.0 / instance.op(op).duration as f64,
        Heuristic::MostWorkRemaining => instance.remaining_work(op) as f64,
        Heuristic::EarliestStart => 1.0,
    }
}

/// Visibility of `op` for the ant in `state`:
/// `1 / (1 + earliest_start(op) - min earliest_start over eligible)` in
/// [`Heuristic::EarliestStart`] mode, [`heuristic_info`] otherwise.
pub fn step_heuristic(instance: &Instance, state: &AntState, op: OpRef, mode: Heuristic) -> f64 {
    match mode {
        Heuristic::EarliestStart => {
            let min = state
                .eligible()
                .iter()
                .map(|&o| state.earliest_start(instance, o))
                .min()
                .unwrap_or(0);
            1.0 / (1 + state.earliest_start(instance, op) - min) as f64
        }
        _ => heuristic_info(instance, op, mode),
    }
}

/// `tau^alpha` for every edge and `eta^beta` for every operation, refreshed
/// after each deposit.
#[derive(Debug, Clone)]
struct Weights {
    num_ops: usize,
    tau_pow: Vec<f64>,
    eta_pow: Vec<f64>,
    /// `(1 / (1 + d))^beta` for every possible delay `d`.
    delay_pow: Vec<f64>,
}

impl Weights {
    fn new(instance: &Instance, tau: &PheromoneMatrix, params: &EasParams) -> Self {
        let beta = params.beta();
        let eta_pow = (0..instance.num_ops())
            .map(|id| heuristic_info(instance, instance.op_ref(id), params.heuristic).powf(beta))
            .collect();
        let delay_pow = match params.heuristic {
            Heuristic::EarliestStart => {
                let horizon: Time = (0..instance.num_ops())
                    .map(|id| instance.op_by_id(id).duration)
                    .sum();
                (0..=horizon)
                    .map(|d| (1.0 / (1 + d) as f64).powf(beta))
                    .collect()
            }
            _ => Vec::new(),
        };
        let mut w = Self {
            num_ops: instance.num_ops(),
            tau_pow: vec![0.0; tau.values().len()],
            eta_pow,
            delay_pow,
        };
        w.refresh(tau, params.alpha);
        w
    }

    fn refresh(&mut self, tau: &PheromoneMatrix, alpha: f64) {
        let floor = tau.floor();
        let floor_pow = floor.powf(alpha);
        for (w, &t) in self.tau_pow.iter_mut().zip(tau.values()) {
            *w = if t == floor { floor_pow } else { t.powf(alpha) };
        }
    }

    /// Unnormalized transition weights of the eligible operations.
    fn fill(&self, instance: &Instance, state: &AntState, params: &EasParams, out: &mut Vec<f64>) {
        out.clear();
        let from = current_node(instance, state);
        let row = &self.tau_pow[from * self.num_ops..(from + 1) * self.num_ops];
        match params.heuristic {
            Heuristic::EarliestStart => {
                // stash start times in `out`, then overwrite with weights
                out.extend(
                    state
                        .eligible()
                        .iter()
                        .map(|&op| state.earliest_start(instance, op) as f64),
                );
                let min = out.iter().copied().fold(f64::INFINITY, f64::min);
                for (w, &op) in out.iter_mut().zip(state.eligible()) {
                    let delay = (*w - min) as usize;
                    *w = row[instance.op_id(op)] * self.delay_pow[delay];
                }
            }
            _ => out.extend(state.eligible().iter().map(|&op| {
                let to = instance.op_id(op);
                row[to] * self.eta_pow[to]
            })),
        }
    }
}

fn current_node(instance: &Instance, state: &AntState) -> usize {
    state
        .last()
        .map_or(instance.num_ops(), |op| instance.op_id(op))
}

/// Transition distribution over the eligible operations, in the order of
/// [`AntState::eligible`].
pub fn transition_probabilities(
    instance: &Instance,
    state: &AntState,
    tau: &PheromoneMatrix,
    params: &EasParams,
) -> Result<Vec<(OpRef, f64)>> {
    if state.eligible().is_empty() {
        return Err(Error::Empty("no eligible operation left for the ant"));
    }
    let mut weights = Vec::with_capacity(state.eligible().len());
    Weights::new(instance, tau, params).fill(instance, state, params, &mut weights);
    let total: f64 = weights.iter().sum();
    Ok(state
        .eligible()
        .iter()
        .zip(weights)
        .map(|(&op, w)| (op, w / total))
        .collect())
}

/// Samples one complete route; returns it with its makespan.
fn sample_route<R: Rng + ?Sized>(
    instance: &Instance,
    weights: &Weights,
    params: &EasParams,
    rng: &mut R,
    scratch: &mut Vec<f64>,
) -> (Encoding, Time) {
    let mut state = AntState::new(instance);
    // first operation: uniform over the initial steps
    let first = rng.gen_range(0..state.eligible().len());
    state.advance(instance, first);
    while !state.is_complete() {
        weights.fill(instance, &state, params, scratch);
        let total: f64 = scratch.iter().sum();
        debug_assert!(total > 0.0 && total.is_finite());
        let mut r = rng.gen::<f64>() * total;
        let mut pick = scratch.len() - 1;
        for (i, &w) in scratch.iter().enumerate() {
            if r < w {
                pick = i;
                break;
            }
            r -= w;
        }
        state.advance(instance, pick);
    }
    let makespan = state.makespan();
    (state.into_encoding(), makespan)
}

/// Builds one complete route by repeatedly sampling the transition rule.
pub fn construct_route<R: Rng + ?Sized>(
    instance: &Instance,
    tau: &PheromoneMatrix,
    params: &EasParams,
    rng: &mut R,
) -> Encoding {
    let weights = Weights::new(instance, tau, params);
    sample_route(instance, &weights, params, rng, &mut Vec::new()).0
}

/// Applies evaporation, the per-ant deposits and the elitist bonus to `tau`.
pub fn deposit(
    instance: &Instance,
    tau: &mut PheromoneMatrix,
    solutions: &[(Encoding, Time)],
    best: (&Encoding, Time),
    params: &EasParams,
) {
    let rho = params.rho;
    tau.tau.iter_mut().for_each(|t| *t *= rho);
    let start = tau.start_node();
    let lay = |tau: &mut PheromoneMatrix, enc: &Encoding, amount: f64| {
        let mut from = start;
        for to in enc.op_ids(instance) {
            tau.add(from, to, amount);
            from = to;
        }
    };
    for (enc, len) in solutions {
        debug_assert!(*len >= 1);
        lay(tau, enc, params.q / *len as f64);
    }
    if params.elite > 0.0 {
        lay(tau, best.0, params.q / best.1 as f64 * params.elite);
    }
    let floor = tau.floor;
    tau.tau.iter_mut().for_each(|t| *t = t.max(floor));
}

/// Runs the colony for `params.cycles` cycles or until `eval_budget`
/// decodes have been spent.
pub fn run_eas<R: Rng + ?Sized>(
    instance: &Instance,
    params: &EasParams,
    rng: &mut R,
    eval_budget: Option<u64>,
) -> Result<SolverResult> {
    params.validate()?;
    let ants = params.ants_for(instance);
    let mut tau = PheromoneMatrix::for_instance(instance, params);
    let mut weights = Weights::new(instance, &tau, params);
    let mut decoder = Decoder::new(instance);
    let mut tracker = BestTracker::new(eval_budget);
    let mut history = Vec::with_capacity(params.cycles);
    let mut solutions: Vec<(Encoding, Time)> = Vec::with_capacity(ants);
    let mut scratch = Vec::with_capacity(instance.num_jobs());

    for _ in 0..params.cycles {
        solutions.clear();
        for _ in 0..ants {
            if tracker.exhausted() {
                break;
            }
            let (enc, partial) = sample_route(instance, &weights, params, rng, &mut scratch);
            let makespan = decoder.makespan(instance, &enc);
            debug_assert_eq!(partial, makespan);
            tracker.record(&enc, makespan);
            solutions.push((enc, makespan));
        }
        if solutions.is_empty() {
            break;
        }
        let cycle_best = solutions
            .iter()
            .min_by_key(|(_, l)| *l)
            .map(|(e, l)| (e.clone(), *l))
            .expect("non-empty");
        deposit(instance, &mut tau, &solutions, (&cycle_best.0, cycle_best.1), params);
        weights.refresh(&tau, params.alpha);
        history.push(tracker.best_makespan().expect("evaluated"));
        if tracker.exhausted() {
            break;
        }
    }
    Ok(tracker.finish(instance, history))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn two_by_two() -> Instance {
        Instance::new("2x2", vec![vec![(0, 3), (1, 2)], vec![(1, 2), (0, 4)]]).unwrap()
    }

    fn probs(p: &[(OpRef, f64)]) -> Vec<f64> {
        p.iter().map(|x| x.1).collect()
    }

    fn inverse_duration() -> EasParams {
        EasParams {
            heuristic: Heuristic::InverseDuration,
            ..Default::default()
        }
    }

    #[test]
    fn default_params_match_table() {
        let p = EasParams::default();
        assert_eq!((p.alpha, p.rho, p.tau0, p.q, p.cycles), (0.2, 0.7, 0.002, 0.001, 1000));
        assert!((p.beta() - 0.8).abs() < 1e-15);
        assert_eq!(p.elite, 5.0);
        assert!((p.tau_floor() - 2e-6).abs() < 1e-18);
        assert!(p.validate().is_ok());
    }

    #[test]
    fn rejects_out_of_range_params() {
        for p in [
            EasParams { alpha: 0.0, ..Default::default() },
            EasParams { alpha: 1.5, ..Default::default() },
            EasParams { rho: -0.1, ..Default::default() },
            EasParams { tau0: 0.0, ..Default::default() },
            EasParams { q: 0.0, ..Default::default() },
            EasParams { cycles: 0, ..Default::default() },
            EasParams { num_ants: Some(0), ..Default::default() },
            EasParams { elite: -1.0, ..Default::default() },
        ] {
            assert!(p.validate().is_err(), "{p:?}");
        }
    }

    #[test]
    fn heuristic_modes() {
        let inst = Instance::new("x", vec![vec![(0, 4)]]).unwrap();
        assert_eq!(heuristic_info(&inst, OpRef::new(0, 0), Heuristic::InverseDuration), 0.25);
        let inst = two_by_two();
        assert_eq!(
            heuristic_info(&inst, OpRef::new(1, 0), Heuristic::MostWorkRemaining),
            6.0
        );
    }

    #[test]
    fn symmetric_choice_is_uniform() {
        let inst = Instance::new("x", vec![vec![(0, 3), (1, 3)], vec![(1, 3), (0, 3)]]).unwrap();
        let tau = PheromoneMatrix::new(4, 0.002, 2e-6);
        let p = transition_probabilities(&inst, &AntState::new(&inst), &tau, &inverse_duration())
            .unwrap();
        assert_eq!(probs(&p), vec![0.5, 0.5]);
    }

    #[test]
    fn heuristic_ratio_probabilities() {
        // eta = 1/3 and 1/4, equal tau: p1/p2 = (4/3)^0.8
        let inst = Instance::new("x", vec![vec![(0, 3), (1, 1)], vec![(1, 4), (0, 1)]]).unwrap();
        let tau = PheromoneMatrix::new(4, 0.002, 2e-6);
        let p = transition_probabilities(&inst, &AntState::new(&inst), &tau, &inverse_duration())
            .unwrap();
        // 30-digit evaluation: 0.557283791421893..., 0.442716208578106...
        assert!((p[0].1 - 0.557_283_791_421_893).abs() < 1e-12);
        assert!((p[1].1 - 0.442_716_208_578_107).abs() < 1e-12);
    }

    #[test]
    fn pheromone_only_limit() {
        let inst = Instance::new("x", vec![vec![(0, 2), (1, 1)], vec![(1, 2), (0, 1)]]).unwrap();
        let mut tau = PheromoneMatrix::new(4, 0.002, 2e-6);
        tau.set(4, 0, 0.004);
        let params = EasParams { alpha: 1.0, ..inverse_duration() };
        let p = transition_probabilities(&inst, &AntState::new(&inst), &tau, &params).unwrap();
        assert!((p[0].1 - 2.0 / 3.0).abs() < 1e-12);
        assert!((p[1].1 - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn earliest_start_prefers_idle_machines() {
        // M0 runs J0 step 0 over 0..3 and J1 step 0 over 3..6, so J0 step 1
        // can start at 3 and J1 step 1 at 6.
        let inst = Instance::new("x", vec![vec![(0, 3), (1, 2)], vec![(0, 3), (1, 2)]]).unwrap();
        let mut state = AntState::new(&inst);
        state.advance(&inst, 0);
        state.advance(&inst, 1);
        assert_eq!(state.eligible(), &[OpRef::new(0, 1), OpRef::new(1, 1)]);
        assert_eq!(state.earliest_start(&inst, OpRef::new(0, 1)), 3);
        assert_eq!(state.earliest_start(&inst, OpRef::new(1, 1)), 6);
        let mode = Heuristic::EarliestStart;
        assert_eq!(step_heuristic(&inst, &state, OpRef::new(0, 1), mode), 1.0);
        assert_eq!(step_heuristic(&inst, &state, OpRef::new(1, 1), mode), 0.25);
        let tau = PheromoneMatrix::for_instance(&inst, &EasParams::default());
        let p = transition_probabilities(&inst, &state, &tau, &EasParams::default()).unwrap();
        let ratio = p[0].1 / p[1].1;
        assert!((ratio - 4f64.powf(0.8)).abs() < 1e-12);
        assert_eq!(state.makespan(), 6);
    }

    #[test]
    fn empty_eligible_set_is_an_error() {
        let inst = Instance::new("x", vec![vec![(0, 2)]]).unwrap();
        let mut state = AntState::new(&inst);
        state.advance(&inst, 0);
        let tau = PheromoneMatrix::new(1, 0.002, 2e-6);
        assert!(transition_probabilities(&inst, &state, &tau, &EasParams::default()).is_err());
    }

    #[test]
    fn ant_state_tracks_eligible_steps() {
        let inst = two_by_two();
        let mut s = AntState::new(&inst);
        assert_eq!(s.eligible(), &[OpRef::new(0, 0), OpRef::new(1, 0)]);
        s.advance(&inst, 0);
        assert_eq!(s.eligible(), &[OpRef::new(0, 1), OpRef::new(1, 0)]);
        s.advance(&inst, 0);
        assert_eq!(s.eligible(), &[OpRef::new(1, 0)]);
        s.advance(&inst, 0);
        s.advance(&inst, 0);
        assert!(s.is_complete());
        assert_eq!(s.into_encoding().as_slice(), &[0, 0, 1, 1]);
    }

    #[test]
    fn single_ant_deposit() {
        let inst = Instance::new("x", vec![vec![(0, 2)]]).unwrap();
        let mut tau = PheromoneMatrix::new(1, 0.002, 2e-6);
        let enc = Encoding::new(&inst, vec![0]).unwrap();
        let params = EasParams { elite: 0.0, ..Default::default() };
        deposit(&inst, &mut tau, &[(enc.clone(), 100)], (&enc, 100), &params);
        assert!((tau.get(1, 0) - 0.00141).abs() < 1e-15);
        // self-loop edge 0 -> 0 is on no route
        assert!((tau.get(0, 0) - 0.0014).abs() < 1e-15);
    }

    #[test]
    fn elitist_bonus() {
        let inst = Instance::new("x", vec![vec![(0, 2)]]).unwrap();
        let params = EasParams::default();
        let enc = Encoding::new(&inst, vec![0]).unwrap();
        let mut with = PheromoneMatrix::new(1, 0.002, 2e-6);
        let mut without = with.clone();
        deposit(&inst, &mut with, &[], (&enc, 100), &params);
        deposit(&inst, &mut without, &[], (&enc, 100), &EasParams { elite: 0.0, ..params });
        assert!((with.get(1, 0) - without.get(1, 0) - 0.00005).abs() < 1e-15);
    }

    #[test]
    fn floor_holds_after_decay() {
        let mut tau = PheromoneMatrix::new(2, 0.002, 2e-6);
        let inst = Instance::new("x", vec![vec![(0, 1)], vec![(0, 1)]]).unwrap();
        let enc = Encoding::new(&inst, vec![0, 1]).unwrap();
        let params = EasParams { rho: 0.0, elite: 0.0, ..Default::default() };
        deposit(&inst, &mut tau, &[], (&enc, 2), &params);
        assert!(tau.values().iter().all(|&t| t == 2e-6));
    }

    #[test]
    fn single_operation_run() {
        let inst = Instance::new("x", vec![vec![(0, 5)]]).unwrap();
        let r = run_eas(&inst, &EasParams::default(), &mut ChaCha8Rng::seed_from_u64(1), None)
            .unwrap();
        assert_eq!(r.best_makespan, 5);
        assert_eq!(r.evals_to_best, 1);
        assert_eq!(r.total_evals, 1000);
    }

    #[test]
    fn budget_stops_early() {
        let inst = two_by_two();
        let r = run_eas(&inst, &EasParams::default(), &mut ChaCha8Rng::seed_from_u64(1), Some(7))
            .unwrap();
        assert_eq!(r.total_evals, 7);
        assert_eq!(r.history.len(), 4);
    }

    #[test]
    fn construct_is_deterministic() {
        let inst = two_by_two();
        let params = EasParams::default();
        let tau = PheromoneMatrix::for_instance(&inst, &params);
        let a = construct_route(&inst, &tau, &params, &mut ChaCha8Rng::seed_from_u64(9));
        let b = construct_route(&inst, &tau, &params, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
        assert!(a.check(&inst).is_ok());
    }
}
