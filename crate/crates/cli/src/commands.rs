use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use kcsp_core::booleancsp::{boolean_solve, find_beta0};
use kcsp_core::driver::{solve, DEFAULT_MAX_ROUNDS};
use kcsp_core::gaussmath::{check_scaling_inequality, check_tail_sandwich};
use kcsp_core::instance::{generate_random_instance, parse_instance};
use kcsp_core::rng::{derive_seed, seeded};
use kcsp_core::sdp::{parse_solution, solve_sdp, write_solution};
use kcsp_core::verify::{probe_all, probe_with_retry, ProbeConfig, ProbeResult, DEFAULT_TRIALS};
use kcsp_core::{DriverConfig, Execution, Instance, SdpSolution, SolveReport, SolverConfig};
use serde::Serialize;

use crate::config::{check_tol, FileConfig};
use crate::output::{emit, to_json, write_atomic, Format};
use crate::{Cli, Command, ConstantsArgs, GenArgs, RoundArgs, SolveArgs, SolverArgs};

/// Flag and file settings merged, flags first.
struct Settings {
    file: FileConfig,
    seed: u64,
    format: Option<Format>,
    exec: Execution,
}

impl Settings {
    fn format_or(&self, fallback: Format) -> Format {
        self.format.or(self.file.format).unwrap_or(fallback)
    }

    fn solver(&self, args: &SolverArgs) -> Result<SolverConfig> {
        let defaults = SolverConfig::default();
        Ok(SolverConfig {
            tol: check_tol(args.tol.or(self.file.tol).unwrap_or(defaults.tol))?,
            restarts: args.restarts.or(self.file.restarts).unwrap_or(defaults.restarts),
            seed: derive_seed(self.seed, "sdp"),
            exec: self.exec,
            ..defaults
        })
    }
}

/// Runs the selected subcommand; `Ok(false)` means a check failed.
pub fn run(cli: Cli) -> Result<bool> {
    let file = FileConfig::load(cli.config.as_deref())?;
    configure_threads(cli.threads.or(file.threads))?;
    let settings = Settings {
        seed: cli.seed.or(file.seed).unwrap_or(0),
        format: cli.format,
        exec: if cli.sequential { Execution::Sequential } else { Execution::default() },
        file,
    };
    match cli.command {
        Command::Gen(args) => gen(&args, &settings).map(|_| true),
        Command::Solve(args) => solve_cmd(&args, &settings).map(|_| true),
        Command::Round(args) => round(&args, &settings, false),
        Command::Verify(args) => round(&args, &settings, true),
        Command::Constants(args) => constants(&args, &settings),
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: Option<usize>) -> Result<()> {
    if let Some(n) = threads {
        if n == 0 {
            bail!("thread count must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring thread pool")?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(threads: Option<usize>) -> Result<()> {
    if threads.is_some_and(|n| n > 1) {
        log::warn!("built without the parallel feature; ignoring thread count");
    }
    Ok(())
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn gen(args: &GenArgs, s: &Settings) -> Result<()> {
    let mut rng = seeded(derive_seed(s.seed, "gen"));
    let inst = generate_random_instance(args.n, args.d, args.k, args.m, &mut rng)?;
    let text =
        format!("# kcsp gen n={} d={} k={} m={} seed={}\n{}", args.n, args.d, args.k, args.m, s.seed, inst.to_text());
    emit(args.out.as_deref(), &text)
}

#[derive(Serialize)]
struct ConfigEcho {
    seed: u64,
    tol: f64,
    restarts: usize,
    max_rounds: u64,
    rounds: Option<u64>,
    boolean: bool,
    parallel: bool,
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    instance: String,
    #[serde(flatten)]
    report: &'a SolveReport,
    mean_value: f64,
    config: ConfigEcho,
    wall_clock_seconds: f64,
}

const SOLVE_CSV_HEADER: &str = "instance,seed,best_value,num_clauses,sdp_objective,max_residual,iterations_run,\
alpha,alpha_claimed,mean_value,wall_clock_seconds";

fn solve_cmd(args: &SolveArgs, s: &Settings) -> Result<()> {
    let inst = read_instance(&args.instance)?;
    let solver = s.solver(&args.solver)?;
    let cfg = DriverConfig {
        solver: solver.clone(),
        max_rounds: args.max_rounds.or(s.file.max_rounds).unwrap_or(DEFAULT_MAX_ROUNDS),
        rounds: args.rounds.or(s.file.rounds),
        seed: s.seed,
        exec: s.exec,
    };
    if cfg.max_rounds == 0 || cfg.rounds == Some(0) {
        bail!("round counts must be positive");
    }
    let start = Instant::now();
    let report = if args.boolean { boolean_solve(&inst, &cfg)? } else { solve(&inst, &cfg)? };
    let elapsed = start.elapsed().as_secs_f64();
    log::info!("best {}/{} after {} trials", report.best_value, report.num_clauses, report.iterations_run);
    if let Some(path) = &args.dump_sdp {
        write_atomic(path, write_solution(&report.solution).as_bytes())?;
    }
    let instance = args.instance.display().to_string();
    let text = match s.format_or(Format::Json) {
        Format::Json => to_json(&SolveOutput {
            instance,
            report: &report,
            mean_value: report.mean_value(),
            config: ConfigEcho {
                seed: cfg.seed,
                tol: solver.tol,
                restarts: solver.restarts,
                max_rounds: cfg.max_rounds,
                rounds: cfg.rounds,
                boolean: args.boolean,
                parallel: s.exec == Execution::Parallel && cfg!(feature = "parallel"),
            },
            wall_clock_seconds: elapsed,
        })?,
        Format::Csv => format!(
            "{SOLVE_CSV_HEADER}\n{},{},{},{},{:.12e},{:.3e},{},{:.6e},{},{:.6},{:.3}\n",
            instance,
            report.seed,
            report.best_value,
            report.num_clauses,
            report.sdp_objective,
            report.sdp.max_residual(),
            report.iterations_run,
            report.alpha,
            report.alpha_claimed,
            report.mean_value(),
            elapsed
        ),
    };
    emit(args.report.as_deref(), &text)
}

fn load_solution(inst: &Instance, args: &RoundArgs, s: &Settings) -> Result<SdpSolution> {
    match &args.sdp_in {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_solution(&text, inst).with_context(|| format!("parsing {}", path.display()))
        }
        None => {
            let (sol, report) = solve_sdp(inst, &s.solver(&args.solver)?)?;
            log::info!("relaxation objective {:.6}, residual {:.2e}", report.objective, report.max_residual());
            Ok(sol)
        }
    }
}

#[derive(Serialize)]
struct ProbeOutput<'a> {
    instance: String,
    scheme: String,
    seed: u64,
    trials: u64,
    retried: bool,
    all_pass: bool,
    results: &'a [ProbeResult],
}

fn round(args: &RoundArgs, s: &Settings, verify: bool) -> Result<bool> {
    let inst = read_instance(&args.instance)?;
    let sol = load_solution(&inst, args, s)?;
    let cfg =
        ProbeConfig { trials: args.trials.or(s.file.trials).unwrap_or(DEFAULT_TRIALS), seed: s.seed, exec: s.exec };
    let (results, retried) = if verify {
        let out = probe_with_retry(&inst, &sol, args.scheme, &cfg)?;
        (out.results, out.retried)
    } else {
        (probe_all(&inst, &sol, args.scheme, &cfg)?, false)
    };
    let all_pass = results.iter().all(|r| r.pass);
    let instance = args.instance.display().to_string();
    let text = match s.format_or(Format::Csv) {
        Format::Json => to_json(&ProbeOutput {
            instance,
            scheme: args.scheme.to_string(),
            seed: cfg.seed,
            trials: cfg.trials,
            retried,
            all_pass,
            results: &results,
        })?,
        Format::Csv => {
            let mut out = format!(
                "# kcsp {} instance={instance} scheme={} trials={} seed={} retried={retried}\n{}\n",
                if verify { "verify" } else { "round" },
                args.scheme,
                cfg.trials,
                cfg.seed,
                ProbeResult::CSV_HEADER
            );
            for r in &results {
                out.push_str(&r.csv_row());
                out.push('\n');
            }
            out
        }
    };
    emit(args.out.as_deref(), &text)?;
    if verify && !all_pass {
        let failed = results.iter().filter(|r| !r.pass).count();
        eprintln!("{failed} of {} clauses below their bound", results.len());
    }
    Ok(!verify || all_pass)
}

#[derive(Serialize)]
struct GaussCheck {
    check: &'static str,
    points: usize,
    violations: usize,
}

fn gauss_checks() -> Result<Vec<GaussCheck>> {
    let ts: Vec<f64> = (0..400).map(|i| 0.01 + (20.0 - 0.01) * i as f64 / 399.0).collect();
    let mut scaling = 0;
    for &t in &ts {
        for j in 1..=20 {
            if !check_scaling_inequality(t, 0.05 * j as f64)? {
                scaling += 1;
            }
        }
    }
    let mut sandwich = 0;
    for i in 1..=400 {
        if !check_tail_sandwich(20.0 * i as f64 / 400.0)? {
            sandwich += 1;
        }
    }
    // (1 - 1/d)^d >= d^{-1/4}
    let power = (57u32..=10_000)
        .filter(|&d| {
            let d = f64::from(d);
            d * (-1.0 / d).ln_1p() < -d.ln() / 4.0
        })
        .count();
    Ok(vec![
        GaussCheck { check: "scaling", points: ts.len() * 20, violations: scaling },
        GaussCheck { check: "sandwich", points: 400, violations: sandwich },
        GaussCheck { check: "power", points: 10_000 - 57 + 1, violations: power },
    ])
}

#[derive(Serialize)]
struct BooleanOutput {
    beta0: f64,
    alpha0: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    g_table: Option<Vec<(f64, f64)>>,
}

fn constants(args: &ConstantsArgs, s: &Settings) -> Result<bool> {
    let format = s.format_or(Format::Csv);
    if args.check_gauss {
        let checks = gauss_checks()?;
        let ok = checks.iter().all(|c| c.violations == 0);
        let text = match format {
            Format::Json => to_json(&checks)?,
            Format::Csv => {
                let mut out = String::from("check,points,violations\n");
                for c in &checks {
                    out.push_str(&format!("{},{},{}\n", c.check, c.points, c.violations));
                }
                out
            }
        };
        emit(None, &text)?;
        return Ok(ok);
    }
    let c = find_beta0();
    let text = match format {
        Format::Json => to_json(&BooleanOutput {
            beta0: c.beta0,
            alpha0: c.alpha0,
            g_table: args.g_table.then(|| c.g_samples.clone()),
        })?,
        Format::Csv => {
            let mut out = format!("quantity,value\nbeta0,{:.12}\nalpha0,{:.12}\n", c.beta0, c.alpha0);
            if args.g_table {
                out.push_str("\nbeta,g\n");
                for (beta, g) in &c.g_samples {
                    out.push_str(&format!("{beta:.6},{g:.12}\n"));
                }
            }
            out
        }
    };
    emit(None, &text)?;
    Ok(true)
}
