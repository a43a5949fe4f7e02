//! Boolean MAX k-CSP: signed-argmax rounding mixed with uniform assignments,
//! and the constants `h_beta`, `g(beta)`, `beta0`, `alpha0` behind its analysis.
//!
//! `h_beta(t) = 2 Phi(beta t) e^{-t^2/2}` where `Phi` is the two-sided normal
//! CDF, `g(beta) = max_t h_beta(t)`, and `beta0` solves `g(beta0) = 1`.

use rand::Rng as _;
use serde::Serialize;

use crate::driver::{best_of, BooleanInfo, DriverConfig, SolveReport, MIN_ROUNDS};
use crate::error::{Error, Result};
use crate::gaussmath::{phi, PolarNormal};
use crate::instance::{Assignment, Clause, Instance};
use crate::rng::{derive_seed, Rng, Substreams};
use crate::sdp::{dot, solve_sdp, SdpSolution, SolverConfig};

/// Range and size of the `g` table.
pub const G_TABLE_RANGE: (f64, f64) = (0.5, 3.0);
pub const G_TABLE_POINTS: usize = 200;

const INV_PHI: f64 = 0.618_033_988_749_894_8;
/// Every maximizer of `h_beta` lies below this.
const T_BRACKET: f64 = 1.5;

pub fn h(beta: f64, t: f64) -> f64 {
    2.0 * phi(beta * t).unwrap_or(1.0) * (-0.5 * t * t).exp()
}

/// Maximizer and maximum of `h_beta` over `t >= 0`.
pub fn h_peak(beta: f64) -> (f64, f64) {
    if beta <= 0.0 {
        return (0.0, 0.0);
    }
    // log h_beta is concave on t > 0, so golden-section search suffices
    let (mut a, mut b) = (0.0, T_BRACKET);
    let mut c = b - INV_PHI * (b - a);
    let mut e = a + INV_PHI * (b - a);
    let (mut fc, mut fe) = (h(beta, c), h(beta, e));
    while b - a > 1e-10 {
        if fc < fe {
            a = c;
            c = e;
            fc = fe;
            e = a + INV_PHI * (b - a);
            fe = h(beta, e);
        } else {
            b = e;
            e = c;
            fe = fc;
            c = b - INV_PHI * (b - a);
            fc = h(beta, c);
        }
    }
    let t = 0.5 * (a + b);
    (t, h(beta, t))
}

pub fn g_of_beta(beta: f64) -> Result<f64> {
    if beta.is_nan() || beta <= 0.0 || beta.is_infinite() {
        return Err(Error::domain(format!("beta must be positive, got {beta}")));
    }
    Ok(h_peak(beta).1)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BooleanConstants {
    pub beta0: f64,
    pub alpha0: f64,
    pub g_samples: Vec<(f64, f64)>,
}

/// Root of `g(beta) = 1` by bisection, plus a `g` table over [`G_TABLE_RANGE`].
pub fn find_beta0() -> BooleanConstants {
    let (mut lo, mut hi) = (1.0, 2.0);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if h_peak(mid).1 < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let beta0 = 0.5 * (lo + hi);
    let (a, b) = G_TABLE_RANGE;
    let g_samples = (0..G_TABLE_POINTS)
        .map(|i| {
            let beta = a + (b - a) * i as f64 / (G_TABLE_POINTS - 1) as f64;
            (beta, h_peak(beta).1)
        })
        .collect();
    BooleanConstants { beta0, alpha0: 1.0 / (beta0 * beta0), g_samples }
}

/// `(1 / (2^k sqrt(2 pi k))) * int_0^inf h_beta(t)^k dt`.
pub fn clause_bound_integral(k: usize, beta: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    if beta.is_nan() || beta <= 0.0 || beta.is_infinite() {
        return Err(Error::domain(format!("beta must be positive, got {beta}")));
    }
    let (t_star, peak) = h_peak(beta);
    let kf = k as f64;
    let ln_peak = peak.ln();
    // integrate (h / peak)^k so the integrand stays O(1)
    let scaled = |t: f64| {
        let v = h(beta, t);
        if v <= 0.0 {
            0.0
        } else {
            (kf * (v.ln() - ln_peak)).exp()
        }
    };
    let cutoff = 1e-20f64.ln();
    let mut upper = t_star.max(1.0);
    while kf * (h(beta, upper).ln() - ln_peak) > cutoff {
        upper *= 1.5;
    }
    let tol = 1e-14 * upper;
    let left = quadrature::integrate(scaled, 0.0, t_star, tol).integral;
    let right = quadrature::integrate(scaled, t_star, upper, tol).integral;
    let ln_value = (left + right).ln() + kf * ln_peak - kf * 2f64.ln() - 0.5 * (2.0 * std::f64::consts::PI * kf).ln();
    Ok(ln_value.exp())
}

/// Appends fresh variables, each with value 1, until every clause has length `k`.
pub fn pad_clauses(inst: &Instance, k: usize) -> Result<Instance> {
    if inst.d() != 2 {
        return Err(Error::domain(format!("padding needs a boolean instance, got d = {}", inst.d())));
    }
    if let Some(c) = inst.clauses().iter().find(|c| c.len() > k) {
        return Err(Error::domain(format!("clause of length {} exceeds k = {k}", c.len())));
    }
    let mut next = inst.n();
    let clauses = inst
        .clauses()
        .iter()
        .map(|c| {
            let extra = k - c.len();
            let pairs = c.pairs().iter().copied().chain((next..next + extra).map(|u| (u, 1)));
            next += extra;
            Clause::new(pairs.collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Instance::new(2, next, clauses)
}

fn coin_value(rng: &mut Rng) -> u32 {
    if rng.random::<bool>() {
        1
    } else {
        2
    }
}

/// Signed argmax of `<u_i, g>` with one shared Gaussian `g`; exact ties and
/// variables without vectors get a fair coin.
pub fn round_boolean_sdp(sol: &SdpSolution, rng: &mut Rng) -> Assignment {
    let mut g = vec![0.0; sol.dim()];
    PolarNormal::new().fill(rng, &mut g);
    let values = (0..sol.n())
        .map(|var| match (sol.u(var, 1), sol.u(var, 2)) {
            (Some(u1), Some(u2)) => {
                let (p1, p2) = (dot(u1, &g), dot(u2, &g));
                if p1 > p2 {
                    1
                } else if p2 > p1 {
                    2
                } else {
                    coin_value(rng)
                }
            }
            _ => coin_value(rng),
        })
        .collect();
    Assignment::from_values_unchecked(values)
}

/// With probability `p_mix` the signed-argmax scheme, otherwise a uniform assignment.
pub fn round_boolean(inst: &Instance, sol: &SdpSolution, p_mix: f64, rng: &mut Rng) -> Result<Assignment> {
    if inst.d() != 2 || sol.d() != 2 || sol.n() != inst.n() {
        return Err(Error::domain("boolean rounding needs matching d = 2 instance and solution"));
    }
    if !(0.0..=1.0).contains(&p_mix) {
        return Err(Error::domain(format!("p_mix must lie in [0, 1], got {p_mix}")));
    }
    if rng.random::<f64>() < p_mix {
        Ok(round_boolean_sdp(sol, rng))
    } else {
        Ok(Assignment::from_values_unchecked((0..inst.n()).map(|_| coin_value(rng)).collect()))
    }
}

/// Pads to `k = inst.k()`, solves the relaxation and keeps the best of the
/// `p = 1/k` mixture over the round budget. Values count clauses of `inst`.
pub fn boolean_solve(inst: &Instance, cfg: &DriverConfig) -> Result<SolveReport> {
    if inst.is_empty() {
        return Err(Error::domain("instance has no clauses"));
    }
    let k = inst.k();
    let padded = pad_clauses(inst, k)?;
    let solver = SolverConfig { seed: derive_seed(cfg.seed, "sdp"), exec: cfg.exec, ..cfg.solver.clone() };
    let (sol, report) = solve_sdp(&padded, &solver)?;
    let consts = find_beta0();
    let p_mix = 1.0 / k as f64;
    let alpha = consts.alpha0 * k as f64 / 2f64.powi(k as i32);
    let trials = cfg.rounds.unwrap_or_else(|| {
        let amplify = (10.0 * (1.0 / alpha).ceil()).min(cfg.max_rounds as f64);
        let n = 2f64.powi(k as i32).max(amplify).max(MIN_ROUNDS as f64);
        n.min(cfg.max_rounds as f64) as u64
    });
    let streams = Substreams::new(cfg.seed, "solve/boolean");
    let n = inst.n();
    let (best_assignment, best_value, per_iteration_values) =
        best_of(inst, trials.max(1), &streams, cfg.exec, None, |rng| {
            let a = round_boolean(&padded, &sol, p_mix, rng).expect("padded instance is boolean");
            Assignment::from_values_unchecked(a.values()[..n].to_vec())
        });
    Ok(SolveReport {
        best_assignment,
        best_value,
        num_clauses: inst.clauses().len(),
        sdp_objective: report.objective,
        sdp: report,
        iterations_run: trials.max(1),
        alpha,
        alpha_claimed: false,
        per_iteration_values,
        seed: cfg.seed,
        boolean: Some(BooleanInfo {
            beta0: consts.beta0,
            alpha0: consts.alpha0,
            padded_k: k,
            padded_vars: padded.n() - n,
            p_mix,
        }),
        solution: sol,
    })
}
