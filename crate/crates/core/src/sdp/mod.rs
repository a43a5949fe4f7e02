//! The vector relaxation: one vector `u_i` per (variable, value) and one
//! vector `z_C` per clause, maximizing `sum_C |z_C|^2` subject to
//!
//! * `sum_i |u_i|^2 <= 1` for every variable,
//! * `<u_i, u_j> = 0` for `i != j`,
//! * `<u_i, z_C> = |z_C|^2` for `(u, i)` in `C`,
//! * `<u_j, z_C> = 0` for `(u, i)` in `C` and `j != i`.

mod io;
mod solver;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance};

pub use io::{parse_solution, write_solution};
pub use solver::{solve_sdp, SolverConfig};

/// Slack on `1/d` when testing uniformity.
pub const UNIFORM_SLACK: f64 = 1e-12;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

/// Vectors of a relaxation solution. Values are 1-based; a variable either
/// carries all `d` of its vectors or none.
#[derive(Debug, Clone, PartialEq)]
pub struct SdpSolution {
    dim: usize,
    d: u32,
    /// Per variable, `d * dim` entries, value `i` at `(i - 1) * dim`.
    u: Vec<Option<Vec<f64>>>,
    z: Vec<Option<Vec<f64>>>,
}

impl SdpSolution {
    /// A solution for `n` variables and `m` clauses with no vectors set.
    pub fn empty(dim: usize, d: u32, n: usize, m: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("solution dimension must be positive"));
        }
        Ok(SdpSolution { dim, d, u: vec![None; n], z: vec![None; m] })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn num_clauses(&self) -> usize {
        self.z.len()
    }

    pub fn has_vectors(&self, var: usize) -> bool {
        self.u[var].is_some()
    }

    /// All `d` vectors of `var`, row-major.
    pub fn u_block(&self, var: usize) -> Option<&[f64]> {
        self.u[var].as_deref()
    }

    pub fn u(&self, var: usize, value: u32) -> Option<&[f64]> {
        let start = (value as usize - 1) * self.dim;
        self.u[var].as_deref().map(|b| &b[start..start + self.dim])
    }

    pub fn z(&self, clause: usize) -> Option<&[f64]> {
        self.z[clause].as_deref()
    }

    fn check_len(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::domain(format!("vector of length {} in a solution of dimension {}", v.len(), self.dim)));
        }
        Ok(())
    }

    /// Sets `u_value` for `var`; the variable's other vectors default to zero.
    pub fn set_u(&mut self, var: usize, value: u32, v: &[f64]) -> Result<()> {
        self.check_len(v)?;
        if value == 0 || value > self.d {
            return Err(Error::domain(format!("value {value} outside [1, {}]", self.d)));
        }
        let dim = self.dim;
        let block = self.u[var].get_or_insert_with(|| vec![0.0; self.d as usize * dim]);
        let start = (value as usize - 1) * dim;
        block[start..start + dim].copy_from_slice(v);
        Ok(())
    }

    pub fn set_z(&mut self, clause: usize, v: &[f64]) -> Result<()> {
        self.check_len(v)?;
        self.z[clause] = Some(v.to_vec());
        Ok(())
    }

    pub(crate) fn set_u_block(&mut self, var: usize, block: Vec<f64>) {
        debug_assert_eq!(block.len(), self.d as usize * self.dim);
        self.u[var] = Some(block);
    }

    pub(crate) fn set_z_owned(&mut self, clause: usize, v: Vec<f64>) {
        debug_assert_eq!(v.len(), self.dim);
        self.z[clause] = Some(v);
    }

    /// `|u_value|^2`, zero when the variable has no vectors.
    pub fn u_norm_sq(&self, var: usize, value: u32) -> f64 {
        self.u(var, value).map_or(0.0, norm_sq)
    }

    pub fn z_norm_sq(&self, clause: usize) -> f64 {
        self.z(clause).map_or(0.0, norm_sq)
    }

    /// `sum_C |z_C|^2`.
    pub fn objective(&self) -> f64 {
        (0..self.z.len()).map(|c| self.z_norm_sq(c)).sum()
    }
}

/// Largest violation in each constraint family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeasibilityReport {
    /// `max(0, sum_i |u_i|^2 - 1)`.
    pub norm: f64,
    /// `|<u_i, u_j>|`, `i != j`.
    pub orthogonality: f64,
    /// `|<u_i, z_C> - |z_C|^2|` for `(u, i)` in `C`.
    pub alignment: f64,
    /// `|<u_j, z_C>|` for `(u, i)` in `C`, `j != i`.
    pub clause_orthogonality: f64,
    pub objective: f64,
    pub tol: f64,
    pub feasible: bool,
}

impl FeasibilityReport {
    pub fn max_residual(&self) -> f64 {
        self.norm.max(self.orthogonality).max(self.alignment).max(self.clause_orthogonality)
    }
}

/// The one-dimensional solution encoding `a`: `u_i = e` iff `a(u) = i`,
/// `z_C = e` iff `a` satisfies `C`.
pub fn intended_solution(inst: &Instance, a: &Assignment) -> SdpSolution {
    let d = inst.d() as usize;
    let mut sol = SdpSolution::empty(1, inst.d(), inst.n(), inst.clauses().len()).expect("dimension 1 is valid");
    for var in 0..inst.n() {
        let mut block = vec![0.0; d];
        block[a.value(var) as usize - 1] = 1.0;
        sol.set_u_block(var, block);
    }
    for (idx, c) in inst.clauses().iter().enumerate() {
        let e = if c.is_satisfied_by(a) { 1.0 } else { 0.0 };
        sol.set_z_owned(idx, vec![e]);
    }
    sol
}

/// Exact residuals of every relaxation constraint.
pub fn check_feasibility(inst: &Instance, sol: &SdpSolution, tol: f64) -> Result<FeasibilityReport> {
    if sol.n() != inst.n() || sol.num_clauses() != inst.clauses().len() || sol.d() != inst.d() {
        return Err(Error::domain(format!(
            "solution shape (n = {}, m = {}, d = {}) does not match the instance (n = {}, m = {}, d = {})",
            sol.n(),
            sol.num_clauses(),
            sol.d(),
            inst.n(),
            inst.clauses().len(),
            inst.d()
        )));
    }
    let d = inst.d();
    let support = inst.support_mask();
    for (var, &needed) in support.iter().enumerate() {
        if needed && !sol.has_vectors(var) {
            return Err(Error::MissingVector(format!("variable {var}")));
        }
    }
    if let Some(c) = (0..sol.num_clauses()).find(|&c| sol.z(c).is_none()) {
        return Err(Error::MissingVector(format!("clause {c}")));
    }

    let mut report = FeasibilityReport {
        norm: 0.0,
        orthogonality: 0.0,
        alignment: 0.0,
        clause_orthogonality: 0.0,
        objective: sol.objective(),
        tol,
        feasible: false,
    };
    for var in (0..inst.n()).filter(|&v| sol.has_vectors(v)) {
        let total: f64 = (1..=d).map(|i| sol.u_norm_sq(var, i)).sum();
        report.norm = report.norm.max(total - 1.0);
        for i in 1..=d {
            for j in i + 1..=d {
                let ip = dot(sol.u(var, i).unwrap(), sol.u(var, j).unwrap());
                report.orthogonality = report.orthogonality.max(ip.abs());
            }
        }
    }
    for (idx, c) in inst.clauses().iter().enumerate() {
        let z = sol.z(idx).unwrap();
        let zz = norm_sq(z);
        for &(var, i) in c.pairs() {
            for j in 1..=d {
                let ip = dot(sol.u(var, j).unwrap(), z);
                if j == i {
                    report.alignment = report.alignment.max((ip - zz).abs());
                } else {
                    report.clause_orthogonality = report.clause_orthogonality.max(ip.abs());
                }
            }
        }
    }
    report.feasible = report.max_residual() <= tol;
    Ok(report)
}

/// Every `|u_i|^2 <= 1/d` (with [`UNIFORM_SLACK`]).
pub fn is_uniform(sol: &SdpSolution, d: u32) -> bool {
    let cap = 1.0 / f64::from(d) + UNIFORM_SLACK;
    (0..sol.n()).filter(|&v| sol.has_vectors(v)).all(|v| (1..=sol.d()).all(|i| sol.u_norm_sq(v, i) <= cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{assignment_value, generate_random_instance, random_assignment, Clause};
    use crate::rng::seeded;

    fn one_clause() -> Instance {
        Instance::new(3, 2, vec![Clause::new([(0, 1), (1, 2)]).unwrap()]).unwrap()
    }

    #[test]
    fn intended_solution_of_satisfying_assignment() {
        let inst = one_clause();
        let a = Assignment::new(vec![1, 2], 3).unwrap();
        let sol = intended_solution(&inst, &a);
        assert_eq!(sol.dim(), 1);
        assert_eq!(sol.z_norm_sq(0), 1.0);
        let rep = check_feasibility(&inst, &sol, 0.0).unwrap();
        assert_eq!(rep.objective, 1.0);
        assert_eq!(rep.max_residual(), 0.0);
        assert!(rep.feasible);
    }

    #[test]
    fn intended_solution_of_violating_assignment() {
        let inst = one_clause();
        let a = Assignment::new(vec![1, 3], 3).unwrap();
        let sol = intended_solution(&inst, &a);
        assert_eq!(sol.z(0).unwrap(), &[0.0]);
        let rep = check_feasibility(&inst, &sol, 0.0).unwrap();
        assert!(rep.feasible);
        assert_eq!(rep.objective, 0.0);
    }

    #[test]
    fn intended_objective_matches_assignment_value() {
        let mut rng = seeded(12);
        let inst = generate_random_instance(4, 3, 2, 10, &mut rng).unwrap();
        for _ in 0..100 {
            let a = random_assignment(4, 3, &mut rng);
            let sol = intended_solution(&inst, &a);
            let rep = check_feasibility(&inst, &sol, 0.0).unwrap();
            assert_eq!(rep.max_residual(), 0.0);
            assert_eq!(rep.objective, assignment_value(&inst, &a) as f64);
        }
    }

    #[test]
    fn doubled_vector_is_flagged() {
        let inst = one_clause();
        let a = Assignment::new(vec![1, 2], 3).unwrap();
        let mut sol = intended_solution(&inst, &a);
        sol.set_u(0, 1, &[2.0]).unwrap();
        let rep = check_feasibility(&inst, &sol, 1e-9).unwrap();
        assert_eq!(rep.norm, 3.0);
        assert_eq!(rep.alignment, 1.0);
        assert!(!rep.feasible);
    }

    #[test]
    fn missing_vectors_are_errors() {
        let inst = one_clause();
        let mut sol = SdpSolution::empty(1, 3, 2, 1).unwrap();
        assert!(matches!(check_feasibility(&inst, &sol, 0.0), Err(Error::MissingVector(_))));
        sol.set_u(0, 1, &[1.0]).unwrap();
        sol.set_u(1, 2, &[1.0]).unwrap();
        assert!(matches!(check_feasibility(&inst, &sol, 0.0), Err(Error::MissingVector(_))));
        sol.set_z(0, &[1.0]).unwrap();
        assert!(check_feasibility(&inst, &sol, 0.0).unwrap().feasible);
    }

    #[test]
    fn uniformity() {
        let mut sol = SdpSolution::empty(4, 4, 1, 0).unwrap();
        sol.set_u(0, 1, &[0.0; 4]).unwrap();
        assert!(is_uniform(&sol, 4));
        for i in 1..=4u32 {
            let mut v = [0.0; 4];
            v[i as usize - 1] = 0.5;
            sol.set_u(0, i, &v).unwrap();
        }
        assert!(is_uniform(&sol, 4));
        sol.set_u(0, 2, &[0.0, 0.51, 0.0, 0.0]).unwrap();
        assert!(!is_uniform(&sol, 4));

        let inst = one_clause();
        let intended = intended_solution(&inst, &Assignment::new(vec![1, 2], 3).unwrap());
        assert!(!is_uniform(&intended, 3));
    }
}
