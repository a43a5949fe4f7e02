//! Monte Carlo estimates of per-clause satisfaction probabilities and the
//! closed-form lower bounds they are compared against.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::instance::{Assignment, Instance};
use crate::rng::{derive_seed, Rng, Substreams};
use crate::rounding::{ClauseStats, Rounder, Scheme};
use crate::sdp::{is_uniform, SdpSolution};

/// One-sided slack, in standard errors.
pub const Z_SCORE: f64 = 3.0;
pub const MIN_TRIALS: u64 = 1000;
pub const DEFAULT_TRIALS: u64 = 200_000;

/// Smallest alphabet for which the uniform scheme's bound is claimed.
pub const UNIFORM_MIN_D: u32 = 57;
/// Smallest alphabet for which the survival, small-r and general bounds are claimed.
pub const GENERAL_MIN_D: u32 = 113;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClauseBound {
    /// The closed form evaluated regardless of its preconditions.
    pub formula: f64,
    /// `formula` when claimed, else 0.
    pub value: f64,
    pub claimed: bool,
}

/// `exp(ln(min(a, e^b)) - |C| ln d) / denom` without overflow.
fn min_over_power(a: f64, exp_arg: f64, len: usize, d: u32, denom: f64) -> f64 {
    let ln_num = if a > 0.0 { a.ln().min(exp_arg) } else { f64::NEG_INFINITY };
    (ln_num - len as f64 * f64::from(d).ln()).exp() / denom
}

/// Per-clause lower bound on the satisfaction probability of `scheme`.
pub fn bound_for_clause(scheme: Scheme, stats: &ClauseStats, d: u32) -> ClauseBound {
    let len = stats.length;
    let c = len as f64;
    let dd = f64::from(d);
    let zz = stats.z_norm_sq;
    let small_r = 4 * stats.r <= len;
    let large_r = 4 * stats.r >= len;
    let (formula, claimed) = match scheme {
        Scheme::Uniform => (min_over_power(zz * c * dd / 8.0, c, len, d, 2.0), d >= UNIFORM_MIN_D),
        Scheme::Survival => (min_over_power(zz * c * dd / 64.0, c / 4.0, len, d, 2.0), d >= GENERAL_MIN_D && large_r),
        Scheme::SmallR => (min_over_power(1.0, 0.0, len, d, 1.0) * (c / 8.0).exp(), d >= GENERAL_MIN_D && small_r),
        Scheme::General => (min_over_power(zz * c * dd / 64.0, c / 8.0 + 2f64.ln(), len, d, 4.0), d >= GENERAL_MIN_D),
    };
    ClauseBound { formula, value: if claimed { formula } else { 0.0 }, claimed }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeResult {
    pub clause: usize,
    pub length: usize,
    pub r: usize,
    pub z_norm_sq: f64,
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    pub std_err: f64,
    pub bound: f64,
    pub claimed: bool,
    pub pass: bool,
}

impl ProbeResult {
    pub fn new(clause: usize, stats: &ClauseStats, trials: u64, successes: u64, bound: f64, claimed: bool) -> Self {
        let p_hat = successes as f64 / trials as f64;
        let std_err = (p_hat * (1.0 - p_hat) / trials as f64).sqrt();
        ProbeResult {
            clause,
            length: stats.length,
            r: stats.r,
            z_norm_sq: stats.z_norm_sq,
            trials,
            successes,
            p_hat,
            std_err,
            bound,
            claimed,
            pass: p_hat >= bound - Z_SCORE * std_err,
        }
    }

    /// `p_hat - bound` in standard errors (infinite when the error is zero).
    pub fn margin(&self) -> f64 {
        let diff = self.p_hat - self.bound;
        if self.std_err > 0.0 {
            diff / self.std_err
        } else if diff >= 0.0 {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    }

    pub const CSV_HEADER: &'static str =
        "clause,length,r,z_norm_sq,trials,successes,p_hat,std_err,bound,claimed,margin,pass";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.12e},{},{},{:.12e},{:.6e},{:.12e},{},{:.4},{}",
            self.clause,
            self.length,
            self.r,
            self.z_norm_sq,
            self.trials,
            self.successes,
            self.p_hat,
            self.std_err,
            self.bound,
            self.claimed,
            self.margin(),
            self.pass
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeConfig {
    pub trials: u64,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { trials: DEFAULT_TRIALS, seed: 0, exec: Execution::default() }
    }
}

/// Runs `sample` once per trial on its own substream and counts, for every
/// clause, the trials whose assignment satisfies it.
pub fn count_satisfied<F>(inst: &Instance, trials: u64, streams: &Substreams, exec: Execution, sample: F) -> Vec<u64>
where
    F: Fn(&mut Rng) -> Assignment + Sync + Send,
{
    exec.sum_vectors(trials, inst.clauses().len(), |t, acc| {
        let a = sample(&mut streams.stream(t));
        for (slot, c) in acc.iter_mut().zip(inst.clauses()) {
            if c.is_satisfied_by(&a) {
                *slot += 1;
            }
        }
    })
}

fn check_trials(trials: u64) -> Result<()> {
    if trials < MIN_TRIALS {
        return Err(Error::domain(format!("need at least {MIN_TRIALS} trials, got {trials}")));
    }
    Ok(())
}

/// Probes every clause of `inst` under `scheme`.
pub fn probe_all(inst: &Instance, sol: &SdpSolution, scheme: Scheme, cfg: &ProbeConfig) -> Result<Vec<ProbeResult>> {
    check_trials(cfg.trials)?;
    let rounder = Rounder::new(inst, sol)?;
    let stats = rounder.clause_stats();
    let streams = Substreams::new(cfg.seed, &format!("verify/{scheme}"));
    let counts = count_satisfied(inst, cfg.trials, &streams, cfg.exec, |rng| rounder.round(scheme, rng));
    // the uniform bound presumes a uniform solution
    let uniform_ok = scheme != Scheme::Uniform || is_uniform(sol, inst.d());
    Ok(stats
        .iter()
        .zip(counts)
        .enumerate()
        .map(|(idx, (st, hits))| {
            let b = bound_for_clause(scheme, st, inst.d());
            let claimed = b.claimed && uniform_ok;
            ProbeResult::new(idx, st, cfg.trials, hits, if claimed { b.value } else { 0.0 }, claimed)
        })
        .collect())
}

pub fn estimate_clause_probability(
    inst: &Instance,
    sol: &SdpSolution,
    scheme: Scheme,
    clause: usize,
    cfg: &ProbeConfig,
) -> Result<ProbeResult> {
    if clause >= inst.clauses().len() {
        return Err(Error::domain(format!("clause {clause} out of range")));
    }
    Ok(probe_all(inst, sol, scheme, cfg)?.swap_remove(clause))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOutcome {
    pub results: Vec<ProbeResult>,
    /// Whether the first run failed and the results come from the retry.
    pub retried: bool,
}

impl VerifyOutcome {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }
}

/// [`probe_all`], repeated once with a derived seed if any clause fails.
pub fn probe_with_retry(
    inst: &Instance,
    sol: &SdpSolution,
    scheme: Scheme,
    cfg: &ProbeConfig,
) -> Result<VerifyOutcome> {
    let results = probe_all(inst, sol, scheme, cfg)?;
    if results.iter().all(|r| r.pass) {
        return Ok(VerifyOutcome { results, retried: false });
    }
    log::info!("clause probe failed at seed {}, retrying once", cfg.seed);
    let retry = ProbeConfig { seed: derive_seed(cfg.seed, "retry"), ..*cfg };
    Ok(VerifyOutcome { results: probe_all(inst, sol, scheme, &retry)?, retried: true })
}
