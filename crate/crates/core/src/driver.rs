//! End-to-end solve: relax, round repeatedly with the general scheme, keep
//! the best assignment.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::instance::{assignment_value, Assignment, Instance};
use crate::rng::{derive_seed, Rng, Substreams};
use crate::rounding::{Rounder, Scheme};
use crate::sdp::{solve_sdp, FeasibilityReport, SdpSolution, SolverConfig};

/// Default cap on rounding trials.
pub const DEFAULT_MAX_ROUNDS: u64 = 1_000_000;
/// Floor on rounding trials.
pub const MIN_ROUNDS: u64 = 100;

/// Per-run expectation constant `min(kd/64, 2e^{k/8}) / (4 d^k)`.
pub fn alpha(k: usize, d: u32) -> f64 {
    let kf = k as f64;
    let dd = f64::from(d);
    let ln_num = (kf * dd / 64.0).ln().min(kf / 8.0 + 2f64.ln());
    (ln_num - kf * dd.ln()).exp() / 4.0
}

/// Per-trial probability floor `alpha / (2 - alpha)` of reaching `alpha * OPT / 2`.
pub fn amplification_bound(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    Ok(alpha / (2.0 - alpha))
}

/// Number of rounding trials: `d^k`, raised to `10 * ceil(1/alpha)` (itself
/// capped at `max_rounds`) and to [`MIN_ROUNDS`], then capped at `max_rounds`.
pub fn round_count(d: u32, k: usize, alpha: f64, max_rounds: u64) -> u64 {
    let d_pow_k = f64::from(d).powi(k as i32);
    let amplify = (10.0 * (1.0 / alpha).ceil()).min(max_rounds as f64);
    let n = d_pow_k.max(amplify).max(MIN_ROUNDS as f64);
    if n >= max_rounds as f64 {
        max_rounds
    } else {
        n as u64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DriverConfig {
    pub solver: SolverConfig,
    pub max_rounds: u64,
    /// Overrides [`round_count`] when set.
    pub rounds: Option<u64>,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for DriverConfig {
    fn default() -> Self {
        DriverConfig {
            solver: SolverConfig::default(),
            max_rounds: DEFAULT_MAX_ROUNDS,
            rounds: None,
            seed: 0,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BooleanInfo {
    pub beta0: f64,
    pub alpha0: f64,
    pub padded_k: usize,
    pub padded_vars: usize,
    pub p_mix: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub best_assignment: Assignment,
    pub best_value: usize,
    pub num_clauses: usize,
    pub sdp_objective: f64,
    pub sdp: FeasibilityReport,
    pub iterations_run: u64,
    pub alpha: f64,
    /// Whether `alpha` is backed by the analysis (`d >= 113`).
    pub alpha_claimed: bool,
    /// Values per trial in trial order; a single-clause instance's direct
    /// satisfying assignment comes first.
    pub per_iteration_values: Vec<usize>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boolean: Option<BooleanInfo>,
    /// The relaxation solution the trials rounded.
    #[serde(skip)]
    pub solution: SdpSolution,
}

impl SolveReport {
    pub fn mean_value(&self) -> f64 {
        let n = self.per_iteration_values.len().max(1) as f64;
        self.per_iteration_values.iter().sum::<usize>() as f64 / n
    }
}

/// Runs `trials` samples and returns all values plus the first best
/// assignment, optionally seeded with a known assignment in front.
pub(crate) fn best_of<F>(
    inst: &Instance,
    trials: u64,
    streams: &Substreams,
    exec: Execution,
    head: Option<Assignment>,
    sample: F,
) -> (Assignment, usize, Vec<usize>)
where
    F: Fn(&mut Rng) -> Assignment + Sync + Send,
{
    let rounds = exec.map(trials, |t| {
        let a = sample(&mut streams.stream(t));
        let v = assignment_value(inst, &a);
        (a, v)
    });
    let mut best: Option<(Assignment, usize)> = None;
    let mut values = Vec::with_capacity(rounds.len() + 1);
    for (a, v) in head
        .map(|a| {
            let v = assignment_value(inst, &a);
            (a, v)
        })
        .into_iter()
        .chain(rounds)
    {
        values.push(v);
        if best.as_ref().is_none_or(|b| v > b.1) {
            best = Some((a, v));
        }
    }
    let (a, v) = best.expect("at least one trial");
    (a, v, values)
}

/// Satisfies the first clause and sets every other variable to 1.
pub(crate) fn direct_assignment(inst: &Instance) -> Assignment {
    let mut values = vec![1u32; inst.n()];
    if let Some(c) = inst.clauses().first() {
        for &(u, i) in c.pairs() {
            values[u] = i;
        }
    }
    Assignment::from_values_unchecked(values)
}

pub fn solve(inst: &Instance, cfg: &DriverConfig) -> Result<SolveReport> {
    if inst.is_empty() {
        return Err(Error::domain("instance has no clauses"));
    }
    let solver = SolverConfig { seed: derive_seed(cfg.seed, "sdp"), exec: cfg.exec, ..cfg.solver.clone() };
    let (sol, report) = solve_sdp(inst, &solver)?;
    let rounder = Rounder::new(inst, &sol)?;
    let k = inst.k();
    let a = alpha(k, inst.d());
    let trials = cfg.rounds.unwrap_or_else(|| round_count(inst.d(), k, a, cfg.max_rounds)).max(1);
    let streams = Substreams::new(cfg.seed, "solve");
    let head = (inst.clauses().len() == 1).then(|| direct_assignment(inst));
    let (best_assignment, best_value, per_iteration_values) =
        best_of(inst, trials, &streams, cfg.exec, head, |rng| rounder.round(Scheme::General, rng));
    log::debug!("solve: {trials} rounds, best {best_value}/{}", inst.clauses().len());
    Ok(SolveReport {
        best_assignment,
        best_value,
        num_clauses: inst.clauses().len(),
        sdp_objective: report.objective,
        sdp: report,
        iterations_run: trials,
        alpha: a,
        alpha_claimed: inst.d() >= crate::verify::GENERAL_MIN_D,
        per_iteration_values,
        seed: cfg.seed,
        boolean: None,
        solution: sol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{brute_force_opt, generate_random_instance, Clause};
    use crate::rng::seeded;

    #[test]
    fn amplification_examples() {
        assert_eq!(amplification_bound(1.0).unwrap(), 1.0);
        assert!((amplification_bound(2.0 / 3.0).unwrap() - 0.5).abs() < 1e-15);
        // 0.01 / 1.99 = 1 / 199
        assert!((amplification_bound(0.01).unwrap() - 1.0 / 199.0).abs() < 1e-17);
        assert!(amplification_bound(0.0).is_err());
        assert!(amplification_bound(1.5).is_err());
        assert!(amplification_bound(f64::NAN).is_err());
    }

    #[test]
    fn alpha_matches_direct_formula() {
        for (k, d) in [(1usize, 113u32), (2, 113), (3, 200), (40, 113)] {
            let kf = k as f64;
            let df = f64::from(d);
            let direct = (kf * df / 64.0).min(2.0 * (kf / 8.0).exp()) / (4.0 * df.powi(k as i32));
            assert!((alpha(k, d) / direct - 1.0).abs() < 1e-12, "k={k} d={d}");
        }
    }

    #[test]
    fn round_count_respects_floor_and_cap() {
        assert_eq!(round_count(2, 1, 0.5, 1000), MIN_ROUNDS);
        assert_eq!(round_count(113, 5, alpha(5, 113), 1_000_000), 1_000_000);
        assert_eq!(round_count(113, 1, alpha(1, 113), 1_000_000), 10 * (1.0 / alpha(1, 113)).ceil() as u64);
        assert_eq!(round_count(3, 2, 0.5, 5), 5);
    }

    #[test]
    fn single_clause_is_satisfied() {
        let inst = Instance::new(7, 4, vec![Clause::new([(0, 3), (1, 5), (3, 7)]).unwrap()]).unwrap();
        let cfg = DriverConfig { rounds: Some(10), ..DriverConfig::default() };
        let rep = solve(&inst, &cfg).unwrap();
        assert_eq!(rep.best_value, 1);
        assert_eq!(rep.per_iteration_values.len(), 11);
    }

    #[test]
    fn report_invariants_hold() {
        let mut rng = seeded(12);
        let inst = generate_random_instance(4, 3, 2, 8, &mut rng).unwrap();
        let (_, opt) = brute_force_opt(&inst).unwrap();
        let cfg = DriverConfig { seed: 5, ..DriverConfig::default() };
        let rep = solve(&inst, &cfg).unwrap();
        assert_eq!(rep.best_value, *rep.per_iteration_values.iter().max().unwrap());
        assert_eq!(rep.best_value, assignment_value(&inst, &rep.best_assignment));
        assert!(rep.best_value <= opt);
        assert_eq!(rep.per_iteration_values.len() as u64, rep.iterations_run);
        let again = solve(&inst, &DriverConfig { exec: Execution::Sequential, ..cfg }).unwrap();
        assert_eq!(again.per_iteration_values, rep.per_iteration_values);
        assert_eq!(again.best_assignment, rep.best_assignment);
    }

    #[test]
    fn empty_instance_is_rejected() {
        let inst = Instance::new(3, 2, vec![]).unwrap();
        assert!(solve(&inst, &DriverConfig::default()).is_err());
    }
}
