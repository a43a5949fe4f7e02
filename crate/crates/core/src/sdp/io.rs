use std::fmt::Write as _;

use super::SdpSolution;
use crate::error::{Error, Result};
use crate::instance::Instance;

/// Text dump: `sdp <dim>`, then `u <var> <val> <floats>` and
/// `z <clause> <floats>`, floats with 17 significant digits.
pub fn write_solution(sol: &SdpSolution) -> String {
    let mut out = format!("sdp {}\n", sol.dim());
    let push = |out: &mut String, v: &[f64]| {
        for x in v {
            let _ = write!(out, " {x:.16e}");
        }
        out.push('\n');
    };
    for var in 0..sol.n() {
        if sol.has_vectors(var) {
            for i in 1..=sol.d() {
                let _ = write!(out, "u {var} {i}");
                push(&mut out, sol.u(var, i).unwrap());
            }
        }
    }
    for c in 0..sol.num_clauses() {
        if let Some(z) = sol.z(c) {
            let _ = write!(out, "z {c}");
            push(&mut out, z);
        }
    }
    out
}

/// Reads a dump produced by [`write_solution`] for `inst`.
pub fn parse_solution(text: &str, inst: &Instance) -> Result<SdpSolution> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut sol: Option<SdpSolution> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let int = |tok: &str| -> Result<usize> {
            tok.parse().map_err(|_| err(line_no, format!("expected an integer, found `{tok}`")))
        };
        let floats = |toks: &[&str], dim: usize| -> Result<Vec<f64>> {
            if toks.len() != dim {
                return Err(err(line_no, format!("expected {dim} coordinates, found {}", toks.len())));
            }
            toks.iter().map(|t| t.parse::<f64>().map_err(|_| err(line_no, format!("bad float `{t}`")))).collect()
        };
        match (toks[0], sol.as_mut()) {
            ("sdp", None) => {
                if toks.len() != 2 {
                    return Err(err(line_no, "expected `sdp <dim>`".into()));
                }
                let dim = int(toks[1])?;
                sol = Some(
                    SdpSolution::empty(dim, inst.d(), inst.n(), inst.clauses().len())
                        .map_err(|e| err(line_no, e.to_string()))?,
                );
            }
            ("u", Some(s)) => {
                if toks.len() < 3 {
                    return Err(err(line_no, "expected `u <var> <val> ...`".into()));
                }
                let var = int(toks[1])?;
                let val = int(toks[2])?;
                if var >= inst.n() || val == 0 || val > inst.d() as usize {
                    return Err(err(line_no, format!("no vector u[{var}][{val}] in this instance")));
                }
                let v = floats(&toks[3..], s.dim())?;
                s.set_u(var, val as u32, &v)?;
            }
            ("z", Some(s)) => {
                if toks.len() < 2 {
                    return Err(err(line_no, "expected `z <clause> ...`".into()));
                }
                let c = int(toks[1])?;
                if c >= inst.clauses().len() {
                    return Err(err(line_no, format!("clause index {c} out of range")));
                }
                let v = floats(&toks[2..], s.dim())?;
                s.set_z(c, &v)?;
            }
            ("sdp", Some(_)) => return Err(err(line_no, "duplicate header".into())),
            (_, None) => return Err(err(line_no, "expected header `sdp <dim>`".into())),
            (other, _) => return Err(err(line_no, format!("unknown line tag `{other}`"))),
        }
    }
    sol.ok_or_else(|| err(1, "empty solution file".into()))
}
