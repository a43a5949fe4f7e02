//! Instances of MAX CSP over the alphabet `[1, d]` whose constraints are
//! conjunctions of equalities `x_u = i`, plus the text format, the
//! predicate-to-clause reduction, random generation and an exhaustive
//! optimum for small instances.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::index;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;

/// Default cap on `d^n` for [`brute_force_opt`].
pub const DEFAULT_BRUTE_FORCE_BUDGET: u128 = 20_000_000;

/// A conjunction of `x_var = value` terms, at most one term per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    pairs: Vec<(usize, u32)>,
}

impl Clause {
    /// Builds a clause; repeated identical pairs collapse, conflicting pairs
    /// on one variable are rejected.
    pub fn new(pairs: impl IntoIterator<Item = (usize, u32)>) -> Result<Self> {
        let mut by_var: BTreeMap<usize, u32> = BTreeMap::new();
        for (var, value) in pairs {
            if let Some(&prev) = by_var.get(&var) {
                if prev != value {
                    return Err(Error::invalid(format!("clause assigns variable {var} both {prev} and {value}")));
                }
            }
            by_var.insert(var, value);
        }
        if by_var.is_empty() {
            return Err(Error::invalid("empty clause"));
        }
        Ok(Clause { pairs: by_var.into_iter().collect() })
    }

    /// Pairs sorted by variable.
    pub fn pairs(&self) -> &[(usize, u32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().map(|&(v, _)| v)
    }

    /// Value the clause requires of `var`, if `var` is in its support.
    pub fn value_of(&self, var: usize) -> Option<u32> {
        self.pairs.binary_search_by_key(&var, |&(v, _)| v).ok().map(|i| self.pairs[i].1)
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.pairs.iter().all(|&(v, i)| a.values[v] == i)
    }
}

/// A total assignment; `values[u]` lies in `[1, d]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Assignment {
    values: Vec<u32>,
}

impl Assignment {
    pub fn new(values: Vec<u32>, d: u32) -> Result<Self> {
        if let Some((u, &x)) = values.iter().enumerate().find(|(_, &x)| x == 0 || x > d) {
            return Err(Error::invalid(format!("variable {u} has value {x} outside [1, {d}]")));
        }
        Ok(Assignment { values })
    }

    pub(crate) fn from_values_unchecked(values: Vec<u32>) -> Self {
        Assignment { values }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn value(&self, var: usize) -> u32 {
        self.values[var]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    d: u32,
    n: usize,
    k: usize,
    clauses: Vec<Clause>,
}

impl Instance {
    pub fn new(d: u32, n: usize, clauses: Vec<Clause>) -> Result<Self> {
        if d < 2 {
            return Err(Error::invalid(format!("alphabet size must be at least 2, got {d}")));
        }
        if n == 0 {
            return Err(Error::invalid("instance needs at least one variable"));
        }
        for (idx, c) in clauses.iter().enumerate() {
            for &(v, i) in c.pairs() {
                if v >= n {
                    return Err(Error::invalid(format!("clause {idx} references variable {v}, but n = {n}")));
                }
                if i == 0 || i > d {
                    return Err(Error::invalid(format!("clause {idx} uses value {i} outside [1, {d}]")));
                }
            }
        }
        Ok(Self::new_unchecked(d, n, clauses))
    }

    pub(crate) fn new_unchecked(d: u32, n: usize, clauses: Vec<Clause>) -> Self {
        let k = clauses.iter().map(Clause::len).max().unwrap_or(0);
        Instance { d, n, k, clauses }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Longest clause length, 0 without clauses.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// `mask[u]` is true iff `u` occurs in some clause.
    pub fn support_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        for c in &self.clauses {
            for v in c.support() {
                mask[v] = true;
            }
        }
        mask
    }

    /// Text form accepted by [`parse_instance`].
    pub fn to_text(&self) -> String {
        let mut out = format!("kcsp {} {}\nnvars {}\n", self.d, self.k, self.n);
        for c in &self.clauses {
            out.push('c');
            for &(v, i) in c.pairs() {
                let _ = write!(out, " {v}={i}");
            }
            out.push('\n');
        }
        out
    }
}

/// A constraint on an ordered tuple of variables, given by its accepted tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicate {
    vars: Vec<usize>,
    accepted: Vec<Vec<u32>>,
}

impl Predicate {
    pub fn new(vars: Vec<usize>, accepted: Vec<Vec<u32>>) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::invalid("predicate without variables"));
        }
        let mut seen = vars.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("predicate repeats a variable: {vars:?}")));
        }
        if let Some(t) = accepted.iter().find(|t| t.len() != vars.len()) {
            return Err(Error::invalid(format!(
                "tuple {t:?} has length {}, predicate arity is {}",
                t.len(),
                vars.len()
            )));
        }
        let mut accepted = accepted;
        accepted.sort_unstable();
        accepted.dedup();
        Ok(Predicate { vars, accepted })
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn accepted(&self) -> &[Vec<u32>] {
        &self.accepted
    }

    pub fn holds(&self, a: &Assignment) -> bool {
        self.accepted.iter().any(|t| self.vars.iter().zip(t).all(|(&v, &x)| a.values[v] == x))
    }
}

/// Replaces each predicate by one clause per accepted tuple. Predicates that
/// accept nothing contribute no clauses.
pub fn reduce_predicates(predicates: &[Predicate], d: u32, n: usize) -> Result<Instance> {
    let mut clauses = Vec::new();
    for p in predicates {
        if p.accepted.is_empty() {
            log::warn!("dropping predicate on {:?}: no accepted tuples", p.vars);
            continue;
        }
        for t in &p.accepted {
            clauses.push(Clause::new(p.vars.iter().copied().zip(t.iter().copied()))?);
        }
    }
    Instance::new(d, n, clauses)
}

pub fn clause_satisfied(c: &Clause, a: &Assignment) -> bool {
    c.is_satisfied_by(a)
}

/// Number of satisfied clauses.
pub fn assignment_value(inst: &Instance, a: &Assignment) -> usize {
    inst.clauses.iter().filter(|c| c.is_satisfied_by(a)).count()
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| parse_err(line, format!("expected {what}, found `{tok}`")))
}

/// Parses the line-oriented instance format:
///
/// ```text
/// kcsp <d> <k>
/// nvars <n>                      # optional, defaults to max index + 1
/// c <var>=<val> <var>=<val> ...
/// p <v1> ... <vk> : <t>;<t>;...  # tuples are comma-separated values
/// ```
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(u32, usize)> = None;
    let mut declared_n: Option<usize> = None;
    let mut clauses = Vec::new();
    let mut predicates = Vec::new();
    let mut max_var: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let tag = toks.next().unwrap_or_default();
        if header.is_none() && tag != "kcsp" {
            return Err(parse_err(line_no, "expected header `kcsp <d> <k>`"));
        }
        match tag {
            "kcsp" => {
                if header.is_some() {
                    return Err(parse_err(line_no, "duplicate header"));
                }
                let d = parse_num(toks.next().unwrap_or(""), line_no, "alphabet size d")?;
                let k = parse_num(toks.next().unwrap_or(""), line_no, "clause length k")?;
                if let Some(extra) = toks.next() {
                    return Err(parse_err(line_no, format!("unexpected token `{extra}`")));
                }
                header = Some((d, k));
            }
            "nvars" => {
                if declared_n.is_some() {
                    return Err(parse_err(line_no, "duplicate nvars line"));
                }
                let n = parse_num(toks.next().unwrap_or(""), line_no, "variable count")?;
                if let Some(extra) = toks.next() {
                    return Err(parse_err(line_no, format!("unexpected token `{extra}`")));
                }
                declared_n = Some(n);
            }
            "c" => {
                let mut pairs = Vec::new();
                for tok in toks {
                    let (v, i) = tok
                        .split_once('=')
                        .ok_or_else(|| parse_err(line_no, format!("expected var=val, found `{tok}`")))?;
                    let v: usize = parse_num(v, line_no, "variable index")?;
                    let i: u32 = parse_num(i, line_no, "value")?;
                    max_var = max_var.max(Some(v));
                    pairs.push((v, i));
                }
                let clause = Clause::new(pairs).map_err(|e| match e {
                    Error::Validation(msg) => Error::Validation(format!("line {line_no}: {msg}")),
                    other => other,
                })?;
                clauses.push((line_no, clause));
            }
            "p" => {
                let rest = line[1..].trim();
                let (vars, tuples) =
                    rest.split_once(':').ok_or_else(|| parse_err(line_no, "predicate needs `:` before its tuples"))?;
                let vars = vars
                    .split_whitespace()
                    .map(|t| parse_num::<usize>(t, line_no, "variable index"))
                    .collect::<Result<Vec<_>>>()?;
                if let Some(&m) = vars.iter().max() {
                    max_var = max_var.max(Some(m));
                }
                let accepted = tuples
                    .split(';')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.split(',').map(|x| parse_num::<u32>(x.trim(), line_no, "value")).collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let pred = Predicate::new(vars, accepted).map_err(|e| parse_err(line_no, e.to_string()))?;
                predicates.push((line_no, pred));
            }
            other => return Err(parse_err(line_no, format!("unknown line tag `{other}`"))),
        }
    }

    let (d, k_declared) = header.ok_or_else(|| parse_err(1, "missing header `kcsp <d> <k>`"))?;
    let n = declared_n.unwrap_or_else(|| max_var.map_or(1, |m| m + 1));

    let mut all = Vec::with_capacity(clauses.len());
    for (line_no, c) in clauses {
        if c.len() > k_declared {
            return Err(Error::invalid(format!(
                "line {line_no}: clause length {} exceeds declared k = {k_declared}",
                c.len()
            )));
        }
        all.push(c);
    }
    for (line_no, p) in &predicates {
        if p.vars.len() > k_declared {
            return Err(Error::invalid(format!(
                "line {line_no}: predicate arity {} exceeds declared k = {k_declared}",
                p.vars.len()
            )));
        }
    }
    let preds: Vec<Predicate> = predicates.into_iter().map(|(_, p)| p).collect();
    all.extend(reduce_predicates(&preds, d.max(2), n.max(1))?.clauses);
    Instance::new(d, n, all)
}

/// Exhaustive optimum with the default budget.
pub fn brute_force_opt(inst: &Instance) -> Result<(Assignment, usize)> {
    brute_force_opt_with(inst, DEFAULT_BRUTE_FORCE_BUDGET, Execution::default())
}

/// Exhaustive optimum over all `d^n` assignments, ties resolved to the
/// lexicographically smallest assignment regardless of how the search is split.
pub fn brute_force_opt_with(inst: &Instance, budget: u128, exec: Execution) -> Result<(Assignment, usize)> {
    let d = u128::from(inst.d);
    let total = (0..inst.n).try_fold(1u128, |acc, _| acc.checked_mul(d));
    let total = match total {
        Some(t) if t <= budget => t as u64,
        Some(t) => return Err(Error::BudgetExceeded { required: t, budget }),
        None => return Err(Error::BudgetExceeded { required: u128::MAX, budget }),
    };

    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    let best_per_chunk = exec.map(chunks, |c| {
        let start = c * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut digits = decode(start, inst.d, inst.n);
        let mut best = (0usize, start);
        let mut first = true;
        for idx in start..end {
            let value = inst.clauses.iter().filter(|c| c.pairs.iter().all(|&(v, i)| digits[v] == i)).count();
            if first || value > best.0 {
                best = (value, idx);
                first = false;
            }
            increment(&mut digits, inst.d);
        }
        best
    });
    let (value, idx) = best_per_chunk.into_iter().fold((0usize, u64::MAX), |acc, (v, i)| {
        if acc.1 == u64::MAX || v > acc.0 || (v == acc.0 && i < acc.1) {
            (v, i)
        } else {
            acc
        }
    });
    Ok((Assignment::from_values_unchecked(decode(idx, inst.d, inst.n)), value))
}

/// Mixed-radix digits of `idx` with variable 0 most significant, values 1-based.
fn decode(mut idx: u64, d: u32, n: usize) -> Vec<u32> {
    let mut digits = vec![1u32; n];
    for slot in digits.iter_mut().rev() {
        *slot = (idx % u64::from(d)) as u32 + 1;
        idx /= u64::from(d);
    }
    digits
}

fn increment(digits: &mut [u32], d: u32) {
    for slot in digits.iter_mut().rev() {
        if *slot < d {
            *slot += 1;
            return;
        }
        *slot = 1;
    }
}

/// `m` clauses of exactly `k` distinct uniformly chosen variables with
/// uniform values.
pub fn generate_random_instance<R: Rng + ?Sized>(
    n: usize,
    d: u32,
    k: usize,
    m: usize,
    rng: &mut R,
) -> Result<Instance> {
    if n == 0 || d < 2 || k == 0 || k > n {
        return Err(Error::invalid(format!("need n >= 1, d >= 2 and 1 <= k <= n (n = {n}, d = {d}, k = {k})")));
    }
    let clauses = (0..m)
        .map(|_| {
            let vars = index::sample(rng, n, k);
            Clause::new(vars.into_iter().map(|v| (v, rng.random_range(1..=d))).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Instance::new(d, n, clauses)
}

/// Uniformly random assignment.
pub fn random_assignment<R: Rng + ?Sized>(n: usize, d: u32, rng: &mut R) -> Assignment {
    Assignment::from_values_unchecked((0..n).map(|_| rng.random_range(1..=d)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn asg(v: &[u32]) -> Assignment {
        Assignment::from_values_unchecked(v.to_vec())
    }

    #[test]
    fn parses_minimal_instance() {
        let inst = parse_instance("kcsp 3 2\nc 0=1 1=2\n").unwrap();
        assert_eq!(inst.d(), 3);
        assert!(inst.n() >= 2);
        assert_eq!(inst.clauses().len(), 1);
        assert_eq!(inst.k(), 2);
    }

    #[test]
    fn comments_and_nvars() {
        let text = "# leading comment\nkcsp 4 3 # trailing\nnvars 6\n\nc 5=4  # last var\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.n(), 6);
        assert_eq!(inst.k(), 1);
    }

    #[test]
    fn conflicting_pairs_are_rejected() {
        let err = parse_instance("kcsp 3 2\nc 0=1 0=2\n").unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err}");
    }

    #[test]
    fn out_of_range_value_is_rejected() {
        let err = parse_instance("kcsp 3 2\nc 0=4\n").unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err}");
        let err = parse_instance("kcsp 3 2\nnvars 2\nc 2=1\n").unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err}");
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        match parse_instance("kcsp 3 2\nc 0=1\nc 1:2\n").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("unexpected {e}"),
        }
        match parse_instance("c 0=1\n").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 1),
            e => panic!("unexpected {e}"),
        }
        assert!(parse_instance("kcsp 3 1\nc 0=1 1=1\n").is_err());
        assert!(parse_instance("kcsp x 1\n").is_err());
        assert!(parse_instance("kcsp 3 2\nq 0=1\n").is_err());
    }

    #[test]
    fn predicate_lines_expand_to_clauses() {
        let inst = parse_instance("kcsp 2 2\np 0 1 : 1,2;2,1\np 0 1 :\n").unwrap();
        assert_eq!(inst.clauses().len(), 2);
        assert_eq!(inst.clauses()[0].pairs(), &[(0, 1), (1, 2)]);
        assert_eq!(inst.clauses()[1].pairs(), &[(0, 2), (1, 1)]);
    }

    #[test]
    fn xor_reduction() {
        let xor = Predicate::new(vec![0, 1], vec![vec![1, 2], vec![2, 1]]).unwrap();
        let inst = reduce_predicates(std::slice::from_ref(&xor), 2, 2).unwrap();
        assert_eq!(inst.clauses().len(), 2);
        for a in [[1, 1], [1, 2], [2, 1], [2, 2]] {
            let a = asg(&a);
            assert_eq!(assignment_value(&inst, &a), usize::from(xor.holds(&a)));
        }
    }

    #[test]
    fn full_unary_predicate_is_always_satisfied_once() {
        let p = Predicate::new(vec![0], vec![vec![1], vec![2], vec![3]]).unwrap();
        let inst = reduce_predicates(&[p], 3, 1).unwrap();
        assert_eq!(inst.clauses().len(), 3);
        for x in 1..=3 {
            assert_eq!(assignment_value(&inst, &asg(&[x])), 1);
        }
    }

    #[test]
    fn random_predicate_matches_clause_family() {
        let mut rng = seeded(11);
        let mut tuples: Vec<Vec<u32>> = (1..=3).flat_map(|a| (1..=3).map(move |b| vec![a, b])).collect();
        // keep 5 of the 9 tuples
        for i in (1..tuples.len()).rev() {
            tuples.swap(i, rng.random_range(0..=i));
        }
        tuples.truncate(5);
        let p = Predicate::new(vec![0, 1], tuples).unwrap();
        let inst = reduce_predicates(std::slice::from_ref(&p), 3, 2).unwrap();
        assert_eq!(inst.clauses().len(), 5);
        for a in 1..=3 {
            for b in 1..=3 {
                let x = asg(&[a, b]);
                assert_eq!(assignment_value(&inst, &x), usize::from(p.holds(&x)));
            }
        }
    }

    #[test]
    fn clause_satisfaction_examples() {
        let c = Clause::new([(0, 1)]).unwrap();
        assert!(clause_satisfied(&c, &asg(&[1, 3])));
        let c = Clause::new([(0, 1), (1, 2)]).unwrap();
        assert!(!clause_satisfied(&c, &asg(&[1, 3])));
    }

    #[test]
    fn clause_satisfaction_matches_tuple_oracle() {
        let mut rng = seeded(5);
        for _ in 0..1000 {
            let vars = index::sample(&mut rng, 4, 3).into_vec();
            let vals: Vec<u32> = (0..3).map(|_| rng.random_range(1..=2)).collect();
            let c = Clause::new(vars.iter().copied().zip(vals.iter().copied())).unwrap();
            let a = random_assignment(4, 2, &mut rng);
            let direct = vars.iter().zip(&vals).all(|(&v, &x)| a.values()[v] == x);
            assert_eq!(clause_satisfied(&c, &a), direct);
        }
    }

    #[test]
    fn value_of_empty_and_single() {
        let empty = Instance::new(3, 2, vec![]).unwrap();
        assert_eq!(assignment_value(&empty, &asg(&[1, 1])), 0);
        assert_eq!(empty.k(), 0);
        let one = Instance::new(3, 2, vec![Clause::new([(0, 2), (1, 3)]).unwrap()]).unwrap();
        assert_eq!(assignment_value(&one, &asg(&[2, 3])), 1);
    }

    #[test]
    fn brute_force_small_cases() {
        let inst = Instance::new(2, 2, vec![Clause::new([(0, 1), (1, 1)]).unwrap()]).unwrap();
        assert_eq!(brute_force_opt(&inst).unwrap().1, 1);
        let inst = Instance::new(2, 1, vec![Clause::new([(0, 1)]).unwrap(), Clause::new([(0, 2)]).unwrap()]).unwrap();
        let (a, v) = brute_force_opt(&inst).unwrap();
        assert_eq!(v, 1);
        assert_eq!(a.values(), &[1]);
    }

    #[test]
    fn brute_force_budget() {
        let inst = Instance::new(113, 4, vec![]).unwrap();
        match brute_force_opt(&inst).unwrap_err() {
            Error::BudgetExceeded { required, .. } => assert_eq!(required, 113u128.pow(4)),
            e => panic!("unexpected {e}"),
        }
        let inst = Instance::new(113, 3, vec![Clause::new([(2, 113)]).unwrap()]).unwrap();
        let (a, v) = brute_force_opt(&inst).unwrap();
        assert_eq!((a.values(), v), (&[1, 1, 113][..], 1));
    }

    #[test]
    fn brute_force_matches_reverse_order_enumeration() {
        let mut rng = seeded(3);
        for _ in 0..5 {
            let inst = generate_random_instance(3, 5, 2, 20, &mut rng).unwrap();
            let (a, v) = brute_force_opt(&inst).unwrap();
            assert_eq!(assignment_value(&inst, &a), v);
            // independent loop: last variable outermost
            let mut oracle = 0;
            for z in 1..=5 {
                for y in 1..=5 {
                    for x in 1..=5 {
                        oracle = oracle.max(assignment_value(&inst, &asg(&[x, y, z])));
                    }
                }
            }
            assert_eq!(v, oracle);
            let seq = brute_force_opt_with(&inst, 1000, Execution::Sequential).unwrap();
            assert_eq!(seq, (a, v));
        }
    }

    #[test]
    fn generation_is_deterministic_and_exact_length() {
        let a = generate_random_instance(5, 3, 2, 10, &mut seeded(7)).unwrap();
        let b = generate_random_instance(5, 3, 2, 10, &mut seeded(7)).unwrap();
        assert_eq!(a, b);
        assert!(a.clauses().iter().all(|c| c.len() == 2));
        assert!(generate_random_instance(2, 3, 3, 1, &mut seeded(7)).is_err());
        assert!(generate_random_instance(2, 1, 1, 1, &mut seeded(7)).is_err());
    }

    #[test]
    fn generated_clauses_hit_fixed_assignment_at_rate_d_pow_minus_k() {
        let mut rng = seeded(99);
        let (n, d, k, m) = (6, 3, 2, 200_000);
        let fixed = random_assignment(n, d, &mut rng);
        let inst = generate_random_instance(n, d, k, m, &mut rng).unwrap();
        let p_hat = assignment_value(&inst, &fixed) as f64 / m as f64;
        let p = 1.0 / 9.0;
        let se = (p * (1.0 - p) / m as f64).sqrt();
        assert!((p_hat - p).abs() <= 3.0 * se, "{p_hat} vs {p}");
    }
}
