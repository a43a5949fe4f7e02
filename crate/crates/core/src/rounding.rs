//! Rounding schemes that turn a relaxation solution into an assignment.
//!
//! * [`Scheme::Uniform`]: project every `u_i` on one shared Gaussian `g`,
//!   pick the value with the largest `|<u_i, g>|`; with probability 1/2 use a
//!   uniformly random assignment instead. Meant for solutions with
//!   `|u_i|^2 <= 1/d`.
//! * [`Scheme::Survival`]: split each variable's values into the `ceil(d/2)`
//!   shortest vectors `S_u` and the `floor(d/2)` longest `L_u`, assign a
//!   random subset of variables from `L_u`, and round the remaining
//!   sub-instance over the alphabets `S_u` with the uniform scheme.
//! * [`Scheme::SmallR`]: independently pick from `L_u` with probability 3/4
//!   and from `S_u` otherwise.
//! * [`Scheme::General`]: a fair coin between the survival and small-r schemes.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussmath::PolarNormal;
use crate::instance::{Assignment, Clause, Instance};
use crate::sdp::{dot, SdpSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Uniform,
    Survival,
    #[serde(rename = "smallr")]
    SmallR,
    General,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Uniform, Scheme::Survival, Scheme::SmallR, Scheme::General];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Uniform => "uniform",
            Scheme::Survival => "survival",
            Scheme::SmallR => "smallr",
            Scheme::General => "general",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown rounding scheme `{s}`")))
    }
}

/// Per-variable split of `[1, d]` into the `ceil(d/2)` values with the
/// shortest vectors and the `floor(d/2)` with the longest. Equal norms go to
/// the smaller value first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    short: Vec<Vec<u32>>,
    long: Vec<Vec<u32>>,
    in_short: Vec<Vec<bool>>,
}

impl Partition {
    /// `S_u`, ascending.
    pub fn short(&self, var: usize) -> &[u32] {
        &self.short[var]
    }

    /// `L_u`, ascending.
    pub fn long(&self, var: usize) -> &[u32] {
        &self.long[var]
    }

    pub fn is_short(&self, var: usize, value: u32) -> bool {
        self.in_short[var][value as usize - 1]
    }
}

pub fn compute_partition(sol: &SdpSolution, inst: &Instance) -> Partition {
    let d = inst.d();
    let n_short = d.div_ceil(2) as usize;
    let mut short = Vec::with_capacity(inst.n());
    let mut long = Vec::with_capacity(inst.n());
    let mut in_short = Vec::with_capacity(inst.n());
    for var in 0..inst.n() {
        let mut order: Vec<(f64, u32)> =
            (1..=d).map(|i| (if var < sol.n() { sol.u_norm_sq(var, i) } else { 0.0 }, i)).collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut s: Vec<u32> = order[..n_short].iter().map(|&(_, i)| i).collect();
        let mut l: Vec<u32> = order[n_short..].iter().map(|&(_, i)| i).collect();
        s.sort_unstable();
        l.sort_unstable();
        let mut mask = vec![false; d as usize];
        for &i in &s {
            mask[i as usize - 1] = true;
        }
        short.push(s);
        long.push(l);
        in_short.push(mask);
    }
    Partition { short, long, in_short }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClauseStats {
    /// Pairs `(u, i)` of the clause with `i` in `S_u`.
    pub r: usize,
    pub length: usize,
    pub z_norm_sq: f64,
}

pub fn compute_clause_stats(sol: &SdpSolution, inst: &Instance, partition: &Partition) -> Vec<ClauseStats> {
    inst.clauses()
        .iter()
        .enumerate()
        .map(|(idx, c)| ClauseStats {
            r: c.pairs().iter().filter(|&&(u, i)| partition.is_short(u, i)).count(),
            length: c.len(),
            z_norm_sq: sol.z_norm_sq(idx),
        })
        .collect()
}

/// Which half of the uniform scheme's mixture to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum UniformBranch {
    Mixed,
    Projection,
}

/// Candidate values and vectors seen by one uniform rounding call.
trait UniformView {
    fn n(&self) -> usize;
    fn dim(&self) -> usize;
    fn domain(&self, var: usize) -> usize;
    /// Output value of candidate `idx`.
    fn label(&self, var: usize, idx: usize) -> u32;
    /// Vector of candidate `idx`; `None` when the variable has no vectors.
    fn vector(&self, var: usize, idx: usize) -> Option<&[f64]>;
}

struct FullView<'a> {
    sol: &'a SdpSolution,
    d: u32,
}

impl UniformView for FullView<'_> {
    fn n(&self) -> usize {
        self.sol.n()
    }
    fn dim(&self) -> usize {
        self.sol.dim()
    }
    fn domain(&self, _var: usize) -> usize {
        self.d as usize
    }
    fn label(&self, _var: usize, idx: usize) -> u32 {
        idx as u32 + 1
    }
    fn vector(&self, var: usize, idx: usize) -> Option<&[f64]> {
        self.sol.u(var, idx as u32 + 1)
    }
}

/// The sub-instance after the partial assignment, without copying vectors.
struct SurvivorView<'a> {
    sol: &'a SdpSolution,
    partition: &'a Partition,
    active: &'a [bool],
}

impl UniformView for SurvivorView<'_> {
    fn n(&self) -> usize {
        self.sol.n()
    }
    fn dim(&self) -> usize {
        self.sol.dim()
    }
    fn domain(&self, var: usize) -> usize {
        self.partition.short(var).len()
    }
    fn label(&self, var: usize, idx: usize) -> u32 {
        self.partition.short(var)[idx]
    }
    fn vector(&self, var: usize, idx: usize) -> Option<&[f64]> {
        if self.active[var] {
            self.sol.u(var, self.partition.short(var)[idx])
        } else {
            None
        }
    }
}

/// Argmax of `|<v, g>|` over the candidates; the first index wins ties.
fn argmax_projection<V: UniformView>(view: &V, var: usize, g: &[f64]) -> usize {
    let mut best = 0;
    let mut best_abs = f64::NEG_INFINITY;
    for idx in 0..view.domain(var) {
        let p = dot(view.vector(var, idx).expect("caller checked"), g).abs();
        if p > best_abs {
            best = idx;
            best_abs = p;
        }
    }
    best
}

fn round_view<V: UniformView, R: Rng + ?Sized>(view: &V, branch: UniformBranch, rng: &mut R) -> Vec<u32> {
    let use_projection = match branch {
        UniformBranch::Projection => true,
        UniformBranch::Mixed => rng.random::<bool>(),
    };
    let n = view.n();
    if !use_projection {
        return (0..n).map(|var| view.label(var, rng.random_range(0..view.domain(var)))).collect();
    }
    let mut g = vec![0.0; view.dim()];
    PolarNormal::new().fill(rng, &mut g);
    (0..n)
        .map(|var| {
            if view.vector(var, 0).is_some() {
                view.label(var, argmax_projection(view, var, &g))
            } else {
                view.label(var, rng.random_range(0..view.domain(var)))
            }
        })
        .collect()
}

/// Outcome of the survival scheme's first step: `Some(value)` for assigned variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAssignment {
    values: Vec<Option<u32>>,
}

impl PartialAssignment {
    pub fn values(&self) -> &[Option<u32>] {
        &self.values
    }

    pub fn is_assigned(&self, var: usize) -> bool {
        self.values[var].is_some()
    }
}

/// Explicit sub-instance left after a partial assignment: surviving clauses
/// restricted to unassigned variables, each variable's alphabet relabeled to
/// `1..=|S_u|`, and the matching solution vectors.
#[derive(Debug, Clone)]
pub struct SubInstance {
    pub instance: Instance,
    pub solution: SdpSolution,
    /// Original clause of each sub-instance clause.
    pub origin: Vec<usize>,
}

impl SubInstance {
    /// Original value of relabeled value `value` of `var`.
    pub fn original_value(partition: &Partition, var: usize, value: u32) -> u32 {
        partition.short(var)[value as usize - 1]
    }
}

/// A relaxation solution prepared for repeated rounding.
#[derive(Debug, Clone)]
pub struct Rounder<'a> {
    inst: &'a Instance,
    sol: &'a SdpSolution,
    partition: Partition,
}

impl<'a> Rounder<'a> {
    pub fn new(inst: &'a Instance, sol: &'a SdpSolution) -> Result<Self> {
        if sol.n() != inst.n() || sol.d() != inst.d() || sol.num_clauses() != inst.clauses().len() {
            return Err(Error::domain("solution does not match the instance"));
        }
        let partition = compute_partition(sol, inst);
        Ok(Rounder { inst, sol, partition })
    }

    pub fn instance(&self) -> &Instance {
        self.inst
    }

    pub fn solution(&self) -> &SdpSolution {
        self.sol
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn clause_stats(&self) -> Vec<ClauseStats> {
        compute_clause_stats(self.sol, self.inst, &self.partition)
    }

    pub fn round<R: Rng + ?Sized>(&self, scheme: Scheme, rng: &mut R) -> Assignment {
        match scheme {
            Scheme::Uniform => self.round_uniform(rng),
            Scheme::Survival => self.round_survival(rng),
            Scheme::SmallR => self.round_smallr(rng),
            Scheme::General => self.round_general(rng),
        }
    }

    pub fn round_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Assignment {
        let view = FullView { sol: self.sol, d: self.inst.d() };
        Assignment::from_values_unchecked(round_view(&view, UniformBranch::Mixed, rng))
    }

    /// Only the projection half of the uniform scheme.
    pub fn round_projection<R: Rng + ?Sized>(&self, rng: &mut R) -> Assignment {
        let view = FullView { sol: self.sol, d: self.inst.d() };
        Assignment::from_values_unchecked(round_view(&view, UniformBranch::Projection, rng))
    }

    /// Each variable independently: with probability `floor(d/2)/d` a
    /// uniform value from `L_u`, otherwise unassigned.
    pub fn partial_assign<R: Rng + ?Sized>(&self, rng: &mut R) -> PartialAssignment {
        let d = self.inst.d();
        let n_long = d / 2;
        let values = (0..self.inst.n())
            .map(|var| {
                if rng.random_range(0..d) < n_long {
                    let long = self.partition.long(var);
                    Some(long[rng.random_range(0..long.len())])
                } else {
                    None
                }
            })
            .collect();
        PartialAssignment { values }
    }

    fn clause_survives(&self, c: &Clause, partial: &PartialAssignment) -> bool {
        c.pairs().iter().all(|&(u, i)| match partial.values[u] {
            Some(x) => x == i,
            None => self.partition.is_short(u, i),
        })
    }

    pub fn survives(&self, clause: usize, partial: &PartialAssignment) -> bool {
        self.clause_survives(&self.inst.clauses()[clause], partial)
    }

    /// Unassigned variables occurring in some surviving clause.
    fn active_mask(&self, partial: &PartialAssignment) -> Vec<bool> {
        let mut active = vec![false; self.inst.n()];
        for c in self.inst.clauses() {
            if self.clause_survives(c, partial) {
                for u in c.support().filter(|&u| !partial.is_assigned(u)) {
                    active[u] = true;
                }
            }
        }
        active
    }

    /// Materializes the sub-instance the survival scheme rounds.
    pub fn sub_instance(&self, partial: &PartialAssignment) -> SubInstance {
        let d_sub = self.inst.d().div_ceil(2);
        let active = self.active_mask(partial);
        let mut clauses = Vec::new();
        let mut origin = Vec::new();
        for (idx, c) in self.inst.clauses().iter().enumerate() {
            if !self.clause_survives(c, partial) {
                continue;
            }
            let pairs: Vec<(usize, u32)> = c
                .pairs()
                .iter()
                .filter(|&&(u, _)| !partial.is_assigned(u))
                .map(|&(u, i)| {
                    let pos = self.partition.short(u).binary_search(&i).expect("surviving value is short");
                    (u, pos as u32 + 1)
                })
                .collect();
            // clauses fully decided by the partial assignment are already satisfied
            if let Ok(clause) = Clause::new(pairs) {
                clauses.push(clause);
                origin.push(idx);
            }
        }
        let instance = Instance::new_unchecked(d_sub, self.inst.n(), clauses);
        let dim = self.sol.dim();
        let mut solution = SdpSolution::empty(dim, d_sub, self.inst.n(), origin.len()).expect("dimension is positive");
        for var in (0..self.inst.n()).filter(|&v| active[v]) {
            let mut block = Vec::with_capacity(d_sub as usize * dim);
            for &i in self.partition.short(var) {
                block.extend_from_slice(self.sol.u(var, i).expect("active variables carry vectors"));
            }
            solution.set_u_block(var, block);
        }
        for (sub_idx, &idx) in origin.iter().enumerate() {
            solution.set_z_owned(sub_idx, self.sol.z(idx).expect("clause vectors present").to_vec());
        }
        SubInstance { instance, solution, origin }
    }

    fn merge(partial: &PartialAssignment, rounded: Vec<u32>) -> Assignment {
        let values = partial.values.iter().zip(rounded).map(|(fixed, x)| fixed.unwrap_or(x)).collect();
        Assignment::from_values_unchecked(values)
    }

    pub fn round_survival<R: Rng + ?Sized>(&self, rng: &mut R) -> Assignment {
        let partial = self.partial_assign(rng);
        let active = self.active_mask(&partial);
        let view = SurvivorView { sol: self.sol, partition: &self.partition, active: &active };
        let rounded = round_view(&view, UniformBranch::Mixed, rng);
        Self::merge(&partial, rounded)
    }

    /// Same as [`Rounder::round_survival`] but through an explicit
    /// [`SubInstance`] and [`round_uniform`]; consumes `rng` identically.
    pub fn round_survival_materialized<R: Rng + ?Sized>(&self, rng: &mut R) -> Assignment {
        let partial = self.partial_assign(rng);
        let sub = self.sub_instance(&partial);
        let rounded = round_uniform(&sub.instance, &sub.solution, rng)
            .expect("sub-instance solution matches")
            .values()
            .iter()
            .enumerate()
            .map(|(var, &x)| SubInstance::original_value(&self.partition, var, x))
            .collect();
        Self::merge(&partial, rounded)
    }

    pub fn round_smallr<R: Rng + ?Sized>(&self, rng: &mut R) -> Assignment {
        let values = (0..self.inst.n())
            .map(|var| {
                let side =
                    if rng.random_range(0..4u32) < 3 { self.partition.long(var) } else { self.partition.short(var) };
                side[rng.random_range(0..side.len())]
            })
            .collect();
        Assignment::from_values_unchecked(values)
    }

    pub fn round_general<R: Rng + ?Sized>(&self, rng: &mut R) -> Assignment {
        if rng.random::<bool>() {
            self.round_survival(rng)
        } else {
            self.round_smallr(rng)
        }
    }
}

pub fn round_uniform<R: Rng + ?Sized>(inst: &Instance, sol: &SdpSolution, rng: &mut R) -> Result<Assignment> {
    Ok(Rounder::new(inst, sol)?.round_uniform(rng))
}

pub fn round_survival<R: Rng + ?Sized>(inst: &Instance, sol: &SdpSolution, rng: &mut R) -> Result<Assignment> {
    Ok(Rounder::new(inst, sol)?.round_survival(rng))
}

pub fn round_smallr<R: Rng + ?Sized>(inst: &Instance, sol: &SdpSolution, rng: &mut R) -> Result<Assignment> {
    Ok(Rounder::new(inst, sol)?.round_smallr(rng))
}

pub fn round_general<R: Rng + ?Sized>(inst: &Instance, sol: &SdpSolution, rng: &mut R) -> Result<Assignment> {
    Ok(Rounder::new(inst, sol)?.round_general(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate_random_instance, random_assignment};
    use crate::rng::{seeded, Substreams};
    use crate::sdp::{intended_solution, is_uniform, solve_sdp, SolverConfig};

    fn norms_solution(d: u32, norms: &[f64]) -> (Instance, SdpSolution) {
        let inst = Instance::new(d, 1, vec![]).unwrap();
        let mut sol = SdpSolution::empty(d as usize, d, 1, 0).unwrap();
        for (k, &nrm) in norms.iter().enumerate() {
            let mut v = vec![0.0; d as usize];
            v[k] = nrm;
            sol.set_u(0, k as u32 + 1, &v).unwrap();
        }
        (inst, sol)
    }

    #[test]
    fn partition_by_norm() {
        let (inst, sol) = norms_solution(3, &[0.9, 0.3, 0.1]);
        let p = compute_partition(&sol, &inst);
        assert_eq!(p.short(0), &[2, 3]);
        assert_eq!(p.long(0), &[1]);
    }

    #[test]
    fn partition_ties_prefer_smaller_value_as_short() {
        let (inst, sol) = norms_solution(4, &[0.5, 0.5, 0.5, 0.5]);
        let p = compute_partition(&sol, &inst);
        assert_eq!(p.short(0), &[1, 2]);
        assert_eq!(p.long(0), &[3, 4]);
    }

    #[test]
    fn clause_stats_count_short_pairs() {
        let inst = Instance::new(4, 2, vec![Clause::new([(0, 3), (1, 1)]).unwrap()]).unwrap();
        let mut sol = SdpSolution::empty(4, 4, 2, 1).unwrap();
        // u: value 3 short (norm 0.1); v: value 1 long (norm 0.9)
        for (var, norms) in [(0usize, [0.5, 0.5, 0.1, 0.5]), (1, [0.9, 0.1, 0.1, 0.1])] {
            for (k, nrm) in norms.iter().enumerate() {
                let mut v = vec![0.0; 4];
                v[k] = *nrm;
                sol.set_u(var, k as u32 + 1, &v).unwrap();
            }
        }
        sol.set_z(0, &[0.0; 4]).unwrap();
        let p = compute_partition(&sol, &inst);
        let stats = compute_clause_stats(&sol, &inst, &p);
        assert_eq!(stats[0].r, 1);
        assert_eq!(stats[0].length, 2);
    }

    #[test]
    fn zero_vectors_still_give_total_assignments() {
        let inst = Instance::new(5, 3, vec![Clause::new([(0, 2), (2, 5)]).unwrap()]).unwrap();
        let mut sol = SdpSolution::empty(3, 5, 3, 1).unwrap();
        sol.set_u(0, 1, &[0.0; 3]).unwrap();
        sol.set_u(2, 1, &[0.0; 3]).unwrap();
        sol.set_z(0, &[0.0; 3]).unwrap();
        let r = Rounder::new(&inst, &sol).unwrap();
        let streams = Substreams::new(1, "t");
        for t in 0..200 {
            for scheme in Scheme::ALL {
                let a = r.round(scheme, &mut streams.stream(t));
                assert_eq!(a.len(), 3);
                assert!(a.values().iter().all(|&x| (1..=5).contains(&x)));
            }
            // projection ties on zero vectors pick the smallest value
            let a = r.round_projection(&mut streams.stream(t));
            assert_eq!((a.value(0), a.value(2)), (1, 1));
        }
    }

    #[test]
    fn projection_reproduces_intended_assignment() {
        let mut rng = seeded(8);
        let inst = generate_random_instance(6, 4, 3, 10, &mut rng).unwrap();
        let a = random_assignment(6, 4, &mut rng);
        let sol = intended_solution(&inst, &a);
        let r = Rounder::new(&inst, &sol).unwrap();
        for t in 0..100 {
            assert_eq!(r.round_projection(&mut seeded(t)), a);
        }
    }

    #[test]
    fn smallr_on_two_letters_prefers_longer_vector() {
        let (inst, sol) = norms_solution(2, &[0.2, 0.9]);
        let r = Rounder::new(&inst, &sol).unwrap();
        let trials = 100_000;
        let hits = (0..trials).filter(|&t| r.round_smallr(&mut seeded(t)).value(0) == 2).count();
        let p_hat = hits as f64 / trials as f64;
        let se = (0.75f64 * 0.25 / trials as f64).sqrt();
        assert!((p_hat - 0.75).abs() <= 4.0 * se, "{p_hat}");
    }

    #[test]
    fn survival_fast_path_matches_materialized_sub_instance() {
        let mut rng = seeded(31);
        let inst = generate_random_instance(4, 4, 2, 6, &mut rng).unwrap();
        let cfg = SolverConfig { seed: 3, ..SolverConfig::default() };
        let (sol, _) = solve_sdp(&inst, &cfg).unwrap();
        let r = Rounder::new(&inst, &sol).unwrap();
        let streams = Substreams::new(5, "survival");
        for t in 0..500 {
            let fast = r.round_survival(&mut streams.stream(t));
            let slow = r.round_survival_materialized(&mut streams.stream(t));
            assert_eq!(fast, slow, "trial {t}");
        }
    }

    #[test]
    fn sub_instance_solution_is_uniform_over_short_alphabet() {
        let mut rng = seeded(77);
        let inst = generate_random_instance(4, 5, 2, 7, &mut rng).unwrap();
        let cfg = SolverConfig { seed: 2, ..SolverConfig::default() };
        let (sol, rep) = solve_sdp(&inst, &cfg).unwrap();
        assert!(rep.feasible);
        let r = Rounder::new(&inst, &sol).unwrap();
        let streams = Substreams::new(9, "sub");
        for t in 0..200 {
            let partial = r.partial_assign(&mut streams.stream(t));
            let sub = r.sub_instance(&partial);
            assert_eq!(sub.instance.d(), 3);
            // the norm cap holds to 1e-6, so allow that much over 1/d'
            let cap = 1.0 / 3.0 + 1e-6;
            for v in (0..4).filter(|&v| sub.solution.has_vectors(v)) {
                for i in 1..=3 {
                    assert!(sub.solution.u_norm_sq(v, i) <= cap);
                }
            }
            if rep.norm == 0.0 {
                assert!(is_uniform(&sub.solution, 3));
            }
            for (k, c) in sub.instance.clauses().iter().enumerate() {
                assert!(r.survives(sub.origin[k], &partial));
                assert!(c.len() <= inst.clauses()[sub.origin[k]].len());
            }
        }
    }

    #[test]
    fn survival_requires_assigned_values_to_match() {
        // d = 4, clause {(0,4),(1,1)}: value 4 is long for var 0, value 1 short for var 1
        let inst = Instance::new(4, 2, vec![Clause::new([(0, 4), (1, 1)]).unwrap()]).unwrap();
        let mut sol = SdpSolution::empty(8, 4, 2, 1).unwrap();
        for var in 0..2 {
            for i in 1..=4u32 {
                let mut v = vec![0.0; 8];
                v[var * 4 + i as usize - 1] = 0.1 * f64::from(i);
                sol.set_u(var, i, &v).unwrap();
            }
        }
        sol.set_z(0, &[0.0; 8]).unwrap();
        let r = Rounder::new(&inst, &sol).unwrap();
        let p = |a: Option<u32>, b: Option<u32>| PartialAssignment { values: vec![a, b] };
        assert!(r.survives(0, &p(Some(4), None)));
        assert!(!r.survives(0, &p(Some(3), None)));
        assert!(!r.survives(0, &p(None, None)));
        assert!(!r.survives(0, &p(Some(4), Some(3))));
    }

    #[test]
    fn general_branch_is_seed_determined() {
        let mut rng = seeded(1);
        let inst = generate_random_instance(3, 3, 2, 4, &mut rng).unwrap();
        let a = random_assignment(3, 3, &mut rng);
        let sol = intended_solution(&inst, &a);
        let r = Rounder::new(&inst, &sol).unwrap();
        for t in 0..50 {
            assert_eq!(r.round_general(&mut seeded(t)), r.round_general(&mut seeded(t)));
        }
    }

    #[test]
    fn scheme_names_parse() {
        for s in Scheme::ALL {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        assert!("bogus".parse::<Scheme>().is_err());
    }
}
