#![allow(dead_code)]

use std::io::Write as _;

use kcsp_core::instance::{random_assignment, Assignment, Clause, Instance};
use kcsp_core::rng::Rng;
use kcsp_core::SdpSolution;
use rand::seq::index;
use rand::Rng as _;

/// Writes one status line past the test harness's output capture.
pub fn report(label: &str, pass: bool, detail: &str) {
    let line = format!("[{}] {label}: {detail}\n", if pass { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
}

/// Standard error of a binomial proportion.
pub fn binomial_se(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

/// One clause pair in a shaped construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// The clause value gets the shortest vector of its variable.
    Short,
    /// The clause value gets a long vector.
    Long,
}

/// Squared norm of a `Long` clause vector.
pub const LONG_NORM_SQ: f64 = 0.5;

/// Feasible relaxation solution where each clause uses fresh variables and
/// the side of every clause pair is fixed by shaping vector norms.
///
/// Coordinates `0..d` are per-value private directions reused across
/// variables; coordinate `d + c` is shared by clause `c`. `Short` pairs use
/// value 1 with `|u_1|^2 = zz` (needs `zz < 1/d`); `Long` pairs use value `d`
/// with `|u_d|^2 = 0.5` (needs `zz <= 0.5`). Other values share the rest of
/// the unit norm budget evenly.
pub fn shaped_solution(d: u32, clauses: &[(Vec<Side>, f64)]) -> (Instance, SdpSolution) {
    let dd = d as usize;
    let m = clauses.len();
    let n: usize = clauses.iter().map(|(sides, _)| sides.len()).sum();
    let dim = dd + m;
    let mut sol = SdpSolution::empty(dim, d, n, m).unwrap();
    let mut built = Vec::with_capacity(m);
    let mut var = 0;
    for (c, (sides, zz)) in clauses.iter().enumerate() {
        let s = zz.sqrt();
        let mut pairs = Vec::new();
        for side in sides {
            let (value, own_sq) = match side {
                Side::Short => (1u32, *zz),
                Side::Long => (d, LONG_NORM_SQ),
            };
            let rest = (1.0 - own_sq) / (dd - 1) as f64;
            for i in 1..=d {
                let mut v = vec![0.0; dim];
                if i == value {
                    v[dd + c] = s;
                    v[(i - 1) as usize] = (own_sq - zz).max(0.0).sqrt();
                } else {
                    v[(i - 1) as usize] = rest.sqrt();
                }
                sol.set_u(var, i, &v).unwrap();
            }
            pairs.push((var, value));
            var += 1;
        }
        let mut z = vec![0.0; dim];
        z[dd + c] = s;
        sol.set_z(c, &z).unwrap();
        built.push(Clause::new(pairs).unwrap());
    }
    (Instance::new(d, n, built).unwrap(), sol)
}

/// Single-variable instance whose value `i` has `|u_i| = norms[i - 1]`.
pub fn norm_profile(norms: &[f64]) -> (Instance, SdpSolution) {
    let d = norms.len() as u32;
    let inst = Instance::new(d, 1, vec![]).unwrap();
    let mut sol = SdpSolution::empty(norms.len(), d, 1, 0).unwrap();
    for (k, &nrm) in norms.iter().enumerate() {
        let mut v = vec![0.0; norms.len()];
        v[k] = nrm;
        sol.set_u(0, k as u32 + 1, &v).unwrap();
    }
    (inst, sol)
}

/// Distinct norms with total squared mass below one, in random order.
pub fn random_norms(d: usize, rng: &mut Rng) -> Vec<f64> {
    let raw: Vec<f64> = (0..d).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|r| (r / total).sqrt()).collect()
}

/// Boolean single-clause instance of length `k` with `|z_C| = beta / sqrt(k)`:
/// `u_1 = z_C` and `u_2` of norm `sqrt(1 - |z_C|^2)` on a private direction.
pub fn boolean_clause_solution(k: usize, beta: f64) -> (Instance, SdpSolution) {
    let zz = beta * beta / k as f64;
    let s = zz.sqrt();
    let dim = k + 1;
    let mut sol = SdpSolution::empty(dim, 2, k, 1).unwrap();
    for var in 0..k {
        let mut u1 = vec![0.0; dim];
        u1[k] = s;
        let mut u2 = vec![0.0; dim];
        u2[var] = (1.0 - zz).sqrt();
        sol.set_u(var, 1, &u1).unwrap();
        sol.set_u(var, 2, &u2).unwrap();
    }
    let mut z = vec![0.0; dim];
    z[k] = s;
    sol.set_z(0, &z).unwrap();
    let clause = Clause::new((0..k).map(|v| (v, 1))).unwrap();
    (Instance::new(2, k, vec![clause]).unwrap(), sol)
}

/// `m` clauses of length `k` that all agree with a hidden random assignment.
pub fn planted_instance(n: usize, d: u32, k: usize, m: usize, rng: &mut Rng) -> (Instance, Assignment) {
    let a = random_assignment(n, d, rng);
    let clauses = (0..m)
        .map(|_| {
            let vars = index::sample(rng, n, k);
            Clause::new(vars.into_iter().map(|v| (v, a.value(v))).collect::<Vec<_>>()).unwrap()
        })
        .collect();
    (Instance::new(d, n, clauses).unwrap(), a)
}

/// Random boolean instance with clause lengths drawn from `1..=k`.
pub fn mixed_length_boolean(n: usize, k: usize, m: usize, rng: &mut Rng) -> Instance {
    let clauses = (0..m)
        .map(|_| {
            let len = rng.random_range(1..=k);
            let vars = index::sample(rng, n, len);
            Clause::new(vars.into_iter().map(|v| (v, rng.random_range(1..=2))).collect::<Vec<_>>()).unwrap()
        })
        .collect();
    Instance::new(2, n, clauses).unwrap()
}
