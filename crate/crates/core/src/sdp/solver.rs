//! Low-rank augmented Lagrangian solver for the relaxation.
//!
//! Every vector is a row of a factor `V` with `rank` columns, so the Gram
//! matrix `V V^T` is positive semidefinite by construction. The per-variable
//! norm cap becomes an equality by adding one slack row per variable:
//! `sum_i |u_i|^2 + |w_u|^2 = 1`. All constraints are then of the form
//! `sum c <v_p, v_q> + b = 0`; the inner problem is minimized with L-BFGS and
//! the multipliers are updated with the usual first-order rule. A few
//! Gauss-Newton projection steps onto the constraint set finish the solve.

use nalgebra::{DMatrix, DVector};
use rand::Rng as _;

use super::{check_feasibility, FeasibilityReport, SdpSolution};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::gaussmath::PolarNormal;
use crate::instance::Instance;
use crate::rng::Substreams;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Accepted max residual of the returned solution.
    pub tol: f64,
    /// Objective slack used by callers comparing against a known optimum.
    pub gap: f64,
    /// Outer (multiplier update) iterations per restart.
    pub max_iters: usize,
    pub restarts: usize,
    /// Factor rank; `None` means `min(vector count, 30)`.
    pub rank: Option<usize>,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-6,
            gap: 1e-4,
            max_iters: 200,
            restarts: 5,
            rank: None,
            seed: 0,
            exec: Execution::default(),
        }
    }
}

/// `sum c <x_p, x_q> + constant`.
#[derive(Debug, Clone)]
struct Quadratic {
    terms: Vec<(usize, usize, f64)>,
    constant: f64,
}

/// Row layout of the factor for one instance.
struct Layout {
    /// Support variables in index order.
    vars: Vec<usize>,
    /// First `u` row of each variable, `usize::MAX` outside the support.
    u_row: Vec<usize>,
    z_row0: usize,
    rows: usize,
    d: usize,
}

struct Problem {
    layout: Layout,
    rank: usize,
    objective: Quadratic,
    constraints: Vec<Quadratic>,
}

impl Problem {
    fn new(inst: &Instance, rank: Option<usize>) -> Problem {
        let d = inst.d() as usize;
        let mask = inst.support_mask();
        let vars: Vec<usize> = (0..inst.n()).filter(|&v| mask[v]).collect();
        let mut u_row = vec![usize::MAX; inst.n()];
        for (k, &v) in vars.iter().enumerate() {
            u_row[v] = k * d;
        }
        let m = inst.clauses().len();
        let z_row0 = vars.len() * d;
        let slack_row0 = z_row0 + m;
        let rows = slack_row0 + vars.len();
        let layout = Layout { vars, u_row, z_row0, rows, d };

        let vector_count = z_row0 + m;
        let rank = rank.unwrap_or_else(|| vector_count.min(30)).max(1);

        let objective = Quadratic { terms: (0..m).map(|c| (z_row0 + c, z_row0 + c, -1.0)).collect(), constant: 0.0 };

        let mut constraints = Vec::new();
        for (k, &v) in layout.vars.iter().enumerate() {
            let base = layout.u_row[v];
            let mut terms: Vec<_> = (0..d).map(|i| (base + i, base + i, 1.0)).collect();
            terms.push((slack_row0 + k, slack_row0 + k, 1.0));
            constraints.push(Quadratic { terms, constant: -1.0 });
            for i in 0..d {
                for j in i + 1..d {
                    constraints.push(Quadratic { terms: vec![(base + i, base + j, 1.0)], constant: 0.0 });
                }
            }
        }
        for (c, clause) in inst.clauses().iter().enumerate() {
            let z = z_row0 + c;
            for &(v, value) in clause.pairs() {
                let base = layout.u_row[v];
                for j in 0..d {
                    let terms = if j + 1 == value as usize {
                        vec![(base + j, z, 1.0), (z, z, -1.0)]
                    } else {
                        vec![(base + j, z, 1.0)]
                    };
                    constraints.push(Quadratic { terms, constant: 0.0 });
                }
            }
        }
        Problem { layout, rank, objective, constraints }
    }

    fn len(&self) -> usize {
        self.layout.rows * self.rank
    }

    fn row<'a>(&self, x: &'a [f64], p: usize) -> &'a [f64] {
        &x[p * self.rank..(p + 1) * self.rank]
    }

    fn eval(&self, q: &Quadratic, x: &[f64]) -> f64 {
        q.terms.iter().map(|&(p, r, c)| c * super::dot(self.row(x, p), self.row(x, r))).sum::<f64>() + q.constant
    }

    /// `g += weight * grad q(x)`.
    fn add_grad(&self, q: &Quadratic, weight: f64, x: &[f64], g: &mut [f64]) {
        let r = self.rank;
        for &(p, s, c) in &q.terms {
            let w = weight * c;
            if p == s {
                for t in 0..r {
                    g[p * r + t] += 2.0 * w * x[p * r + t];
                }
            } else {
                for t in 0..r {
                    g[p * r + t] += w * x[s * r + t];
                    g[s * r + t] += w * x[p * r + t];
                }
            }
        }
    }

    fn residuals(&self, x: &[f64], out: &mut Vec<f64>) {
        out.clear();
        out.extend(self.constraints.iter().map(|q| self.eval(q, x)));
    }

    /// Augmented Lagrangian `f - lambda.h + sigma/2 |h|^2` and its gradient.
    fn augmented(&self, x: &[f64], lambda: &[f64], sigma: f64, g: &mut [f64]) -> f64 {
        g.iter_mut().for_each(|v| *v = 0.0);
        let mut value = self.eval(&self.objective, x);
        self.add_grad(&self.objective, 1.0, x, g);
        for (q, &l) in self.constraints.iter().zip(lambda) {
            let h = self.eval(q, x);
            value += -l * h + 0.5 * sigma * h * h;
            let w = -l + sigma * h;
            if w != 0.0 {
                self.add_grad(q, w, x, g);
            }
        }
        value
    }

    fn to_solution(&self, inst: &Instance, x: &[f64]) -> SdpSolution {
        let r = self.rank;
        let d = self.layout.d;
        let mut sol = SdpSolution::empty(r, inst.d(), inst.n(), inst.clauses().len()).expect("rank is positive");
        for &v in &self.layout.vars {
            let start = self.layout.u_row[v] * r;
            sol.set_u_block(v, x[start..start + d * r].to_vec());
        }
        for c in 0..inst.clauses().len() {
            sol.set_z_owned(c, self.row(x, self.layout.z_row0 + c).to_vec());
        }
        sol
    }
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Limited-memory BFGS with Armijo backtracking; returns the number of iterations.
fn lbfgs<F>(x: &mut [f64], mut f: F, gtol: f64, max_iter: usize) -> usize
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    const MEMORY: usize = 8;
    let n = x.len();
    let mut g = vec![0.0; n];
    let mut value = f(x, &mut g);
    let mut s_hist: Vec<Vec<f64>> = Vec::with_capacity(MEMORY);
    let mut y_hist: Vec<Vec<f64>> = Vec::with_capacity(MEMORY);
    let mut rho_hist: Vec<f64> = Vec::with_capacity(MEMORY);
    let mut dir = vec![0.0; n];
    let mut x_new = vec![0.0; n];
    let mut g_new = vec![0.0; n];
    let mut alpha = [0.0; MEMORY];

    for iter in 0..max_iter {
        if inf_norm(&g) <= gtol {
            return iter;
        }
        // two-loop recursion
        dir.copy_from_slice(&g);
        for k in (0..s_hist.len()).rev() {
            alpha[k] = rho_hist[k] * super::dot(&s_hist[k], &dir);
            dir.iter_mut().zip(&y_hist[k]).for_each(|(q, y)| *q -= alpha[k] * y);
        }
        if let (Some(s), Some(y)) = (s_hist.last(), y_hist.last()) {
            let gamma = super::dot(s, y) / super::dot(y, y);
            dir.iter_mut().for_each(|q| *q *= gamma);
        } else {
            let scale = 1.0 / inf_norm(&g).max(1.0);
            dir.iter_mut().for_each(|q| *q *= scale);
        }
        for k in 0..s_hist.len() {
            let beta = rho_hist[k] * super::dot(&y_hist[k], &dir);
            dir.iter_mut().zip(&s_hist[k]).for_each(|(q, s)| *q += (alpha[k] - beta) * s);
        }
        dir.iter_mut().for_each(|q| *q = -*q);

        let mut slope = super::dot(&g, &dir);
        if slope >= 0.0 {
            // lost descent; restart from steepest descent
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            let scale = 1.0 / inf_norm(&g).max(1.0);
            for (q, gi) in dir.iter_mut().zip(&g) {
                *q = -gi * scale;
            }
            slope = super::dot(&g, &dir);
        }

        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..50 {
            for ((xn, xi), di) in x_new.iter_mut().zip(x.iter()).zip(&dir) {
                *xn = xi + step * di;
            }
            let v = f(&x_new, &mut g_new);
            if v <= value + 1e-4 * step * slope {
                accepted = true;
                let s: Vec<f64> = x_new.iter().zip(x.iter()).map(|(a, b)| a - b).collect();
                let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
                let sy = super::dot(&s, &y);
                if sy > 1e-12 * super::dot(&y, &y).sqrt() * super::dot(&s, &s).sqrt() {
                    if s_hist.len() == MEMORY {
                        s_hist.remove(0);
                        y_hist.remove(0);
                        rho_hist.remove(0);
                    }
                    s_hist.push(s);
                    y_hist.push(y);
                    rho_hist.push(1.0 / sy);
                }
                x.copy_from_slice(&x_new);
                g.copy_from_slice(&g_new);
                value = v;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            if s_hist.is_empty() {
                return iter;
            }
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
        }
    }
    max_iter
}

/// Dense size cap for the Jacobian and its Gram matrix in [`project`].
const MAX_PROJECTION_ENTRIES: usize = 25_000_000;

/// Minimum-norm Gauss-Newton steps toward `h(x) = 0`; keeps a step only if
/// it lowers the largest residual.
fn project(problem: &Problem, x: &mut Vec<f64>) {
    let m = problem.constraints.len();
    let n = problem.len();
    if m == 0 {
        return;
    }
    if m * (m + n) > MAX_PROJECTION_ENTRIES {
        log::debug!("skipping projection: {m} constraints over {n} coordinates");
        return;
    }
    let mut h = Vec::with_capacity(m);
    problem.residuals(x, &mut h);
    let mut worst = inf_norm(&h);
    for _ in 0..12 {
        if worst < 1e-15 {
            break;
        }
        let mut jac = DMatrix::<f64>::zeros(m, n);
        let mut row = vec![0.0; n];
        for (k, q) in problem.constraints.iter().enumerate() {
            row.iter_mut().for_each(|v| *v = 0.0);
            problem.add_grad(q, 1.0, x, &mut row);
            for (col, &v) in row.iter().enumerate() {
                if v != 0.0 {
                    jac[(k, col)] = v;
                }
            }
        }
        let gram = &jac * jac.transpose();
        let svd = gram.svd(true, true);
        let cutoff = svd.singular_values.max() * 1e-13;
        let rhs = DVector::from_column_slice(&h);
        let Ok(y) = svd.solve(&rhs, cutoff) else { break };
        let delta = jac.transpose() * y;
        let trial: Vec<f64> = x.iter().zip(delta.iter()).map(|(a, b)| a - b).collect();
        let mut h_trial = Vec::with_capacity(m);
        problem.residuals(&trial, &mut h_trial);
        let w = inf_norm(&h_trial);
        if w < worst {
            *x = trial;
            h = h_trial;
            worst = w;
        } else {
            break;
        }
    }
}

struct Attempt {
    solution: SdpSolution,
    report: FeasibilityReport,
    iterations: usize,
}

fn solve_once(inst: &Instance, problem: &Problem, cfg: &SolverConfig, streams: Substreams) -> Result<Attempt> {
    let mut rng = streams.stream(0);
    let mut normal = PolarNormal::new();
    let scale = 0.5 / (problem.rank as f64).sqrt();
    let mut x: Vec<f64> = (0..problem.len()).map(|_| scale * normal.sample(&mut rng)).collect();
    // random sign flips keep restarts from sharing a start up to symmetry
    if rng.random::<bool>() {
        x.iter_mut().for_each(|v| *v = -*v);
    }

    let m = problem.constraints.len();
    let mut lambda = vec![0.0; m];
    let mut sigma = 10.0;
    let mut h = Vec::with_capacity(m);
    let mut prev_violation = f64::INFINITY;
    let mut gtol = 1e-2;
    let mut iterations = 0;
    let mut prev_objective = f64::INFINITY;

    for outer in 0..cfg.max_iters {
        iterations = outer + 1;
        lbfgs(&mut x, |x, g| problem.augmented(x, &lambda, sigma, g), gtol, 1000);
        problem.residuals(&x, &mut h);
        let violation = inf_norm(&h);
        let objective = problem.eval(&problem.objective, &x);
        // the final projection absorbs residuals of this size
        let stalled = violation <= 1e-7 && (objective - prev_objective).abs() <= 1e-10 * (1.0 + objective.abs());
        if (violation <= 1e-8 && gtol <= 1e-6) || stalled {
            break;
        }
        for (l, hk) in lambda.iter_mut().zip(&h) {
            *l -= sigma * hk;
        }
        if violation > 0.25 * prev_violation {
            sigma = (sigma * 4.0).min(1e7);
        }
        prev_violation = violation;
        prev_objective = objective;
        gtol = (gtol * 0.3).max(1e-7);
    }

    project(problem, &mut x);
    let solution = problem.to_solution(inst, &x);
    let report = check_feasibility(inst, &solution, cfg.tol)?;
    Ok(Attempt { solution, report, iterations })
}

/// Approximately solves the relaxation of `inst`.
///
/// Runs `cfg.restarts` independent starts and keeps the best feasible one
/// (largest objective, earliest restart on ties). If no start reaches
/// `cfg.tol`, returns [`Error::NotConverged`] carrying the least infeasible
/// iterate.
pub fn solve_sdp(inst: &Instance, cfg: &SolverConfig) -> Result<(SdpSolution, FeasibilityReport)> {
    if inst.is_empty() {
        return Err(Error::invalid("cannot solve the relaxation of an instance without clauses"));
    }
    if cfg.tol.is_nan() || cfg.tol <= 0.0 {
        return Err(Error::domain(format!("solver tolerance must be positive, got {}", cfg.tol)));
    }
    let problem = Problem::new(inst, cfg.rank);
    let streams = Substreams::new(cfg.seed, "sdp");
    let restarts = cfg.restarts.max(1) as u64;
    let attempts = cfg
        .exec
        .map(restarts, |i| solve_once(inst, &problem, cfg, streams.child(i)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let best_feasible =
        attempts.iter().enumerate().filter(|(_, a)| a.report.feasible).fold(None::<(usize, f64)>, |best, (i, a)| {
            match best {
                Some((_, obj)) if obj >= a.report.objective => best,
                _ => Some((i, a.report.objective)),
            }
        });
    let iterations: usize = attempts.iter().map(|a| a.iterations).sum();
    match best_feasible {
        Some((i, _)) => {
            let a = attempts.into_iter().nth(i).unwrap();
            log::debug!(
                "relaxation objective {:.9} (residual {:.2e}, {} outer iterations)",
                a.report.objective,
                a.report.max_residual(),
                iterations
            );
            Ok((a.solution, a.report))
        }
        None => {
            let a = attempts
                .into_iter()
                .min_by(|a, b| a.report.max_residual().total_cmp(&b.report.max_residual()))
                .unwrap();
            Err(Error::NotConverged {
                iterations,
                residual: a.report.max_residual(),
                best: Box::new((a.solution, a.report)),
            })
        }
    }
}
