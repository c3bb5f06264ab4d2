//! Command-line front end for the `cornerscan` solvers.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use cornerscan::bounds;
use cornerscan::circle::{self, DEFAULT_STEP_CAP, DEFAULT_TOL, THRESHOLD_D_TOL};
use cornerscan::geometry::evaluate_trajectory;
use cornerscan::global;
use serde::Serialize;
use thiserror::Error;

pub mod output;
pub mod plot;
pub mod reproduce;
pub mod trajectory_file;

use output::{csv, text};
use trajectory_file::TrajectoryFile;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Internal(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Internal(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<cornerscan::Error> for CliError {
    fn from(e: cornerscan::Error) -> Self {
        match e {
            cornerscan::Error::Domain(_) | cornerscan::Error::InvalidTrajectory(_) => CliError::Domain(e.to_string()),
            cornerscan::Error::Internal(_) => CliError::Internal(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "cornerscan", version, about = "Search around a corner when every scan costs time")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal circle-strategy ratio for one distance (or simulate a given ratio).
    Solve {
        #[arg(long)]
        d: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        step_cap: usize,
        /// Simulate this ratio instead of searching for the optimum.
        #[arg(long)]
        c: Option<f64>,
        /// Also write the scan points as a trajectory document.
        #[arg(long)]
        trajectory_out: Option<PathBuf>,
    },
    /// Optimal ratio on evenly spaced distances.
    Curve {
        #[arg(long)]
        d_min: f64,
        #[arg(long)]
        d_max: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Largest distance served by each number of intermediate scans.
    Thresholds {
        #[arg(long, default_value_t = 5)]
        max_scans: usize,
        #[arg(long, default_value_t = THRESHOLD_D_TOL)]
        tol: f64,
    },
    /// Worst-case ratio of a trajectory document.
    Verify {
        #[arg(long)]
        trajectory: PathBuf,
    },
    /// Pessimistic recursion for a strategy claiming ratio 2 - delta.
    Lowerbound {
        #[arg(long, value_delimiter = ',', default_values_t = reproduce::LOWER_BOUND_DELTAS.to_vec())]
        delta: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        step_cap: usize,
    },
    /// Numeric witness that ratio 2 + epsilon is reachable for large d.
    Asymptotics {
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = bounds::DEFAULT_GLIDE_START)]
        n: usize,
        #[arg(long, default_value_t = bounds::DEFAULT_D_CAP)]
        d_cap: f64,
    },
    /// Free placement of n intermediate scan points.
    Optimize {
        #[arg(long)]
        d: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long, default_value_t = global::DEFAULT_SEED)]
        seed: u64,
    },
    /// Recompute the reference numbers and print a pass/fail table.
    Reproduce,
}

/// What a successful run produced.
#[derive(Debug)]
pub struct Outcome {
    pub body: String,
    /// `reproduce` returns output even when some check fails.
    pub all_passed: bool,
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::Domain(format!("--{name} must be positive, got {v}")))
    }
}

impl Cli {
    fn default_format(&self) -> Format {
        match self.command {
            Command::Curve { .. } | Command::Thresholds { .. } => Format::Csv,
            _ => Format::Text,
        }
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_else(|| self.default_format())
    }

    /// Checks every parameter before any computation starts.
    pub fn validate(&self) -> Result<(), CliError> {
        let format = self.format();
        let allowed: &[Format] = match self.command {
            Command::Curve { .. } => &[Format::Csv, Format::Json, Format::Svg, Format::Text],
            Command::Thresholds { .. } | Command::Lowerbound { .. } => &[Format::Csv, Format::Json, Format::Text],
            Command::Reproduce => &[Format::Text],
            _ => &[Format::Json, Format::Text],
        };
        if !allowed.contains(&format) {
            return Err(CliError::Domain(format!("format {format:?} is not available for this subcommand")));
        }
        match &self.command {
            Command::Solve { d, tol, step_cap, c, .. } => {
                positive("d", *d)?;
                positive("tol", *tol)?;
                if *step_cap == 0 {
                    return Err(CliError::Domain("--step-cap must be positive".into()));
                }
                if let Some(c) = c {
                    if !(c.is_finite() && *c > 1.0) {
                        return Err(CliError::Domain(format!("--c must exceed 1, got {c}")));
                    }
                }
            }
            Command::Curve { d_min, d_max, samples } => {
                positive("d-min", *d_min)?;
                positive("d-max", *d_max)?;
                if d_min >= d_max {
                    return Err(CliError::Domain(format!("--d-min {d_min} must be below --d-max {d_max}")));
                }
                if *samples < 2 {
                    return Err(CliError::Domain("--samples must be at least 2".into()));
                }
                if format == Format::Svg && self.output.is_none() {
                    return Err(CliError::Domain("svg output needs --output".into()));
                }
            }
            Command::Thresholds { tol, .. } => positive("tol", *tol)?,
            Command::Verify { .. } | Command::Reproduce => {}
            Command::Lowerbound { delta, step_cap } => {
                if let Some(bad) = delta.iter().find(|&&x| !(x > 0.0 && x < 1.0)) {
                    return Err(CliError::Domain(format!("--delta values must lie in (0, 1), got {bad}")));
                }
                if *step_cap == 0 {
                    return Err(CliError::Domain("--step-cap must be positive".into()));
                }
            }
            Command::Asymptotics { epsilon, n, d_cap } => {
                positive("epsilon", *epsilon)?;
                positive("d-cap", *d_cap)?;
                if *n == 0 {
                    return Err(CliError::Domain("--n must be at least 1".into()));
                }
            }
            Command::Optimize { d, restarts, .. } => {
                positive("d", *d)?;
                if *restarts == 0 {
                    return Err(CliError::Domain("--restarts must be at least 1".into()));
                }
            }
        }
        Ok(())
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Internal(format!("serialisation failed: {e}")))
}

fn write_file(path: &std::path::Path, body: &str) -> Result<(), CliError> {
    std::fs::write(path, body).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

#[derive(Serialize)]
struct SolveJson<'a> {
    c_opt: Option<f64>,
    scan_count: Option<usize>,
    sequence: &'a circle::StepSequence,
}

#[derive(Serialize)]
struct OptimizeJson {
    d: f64,
    points: Vec<[f64; 2]>,
    ends_at_corner: bool,
    c_achieved: f64,
    iterations: usize,
    converged: bool,
}

/// Runs the subcommand and returns the text destined for stdout or `--output`.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    cli.validate()?;
    let format = cli.format();
    let mut all_passed = true;

    let body = match &cli.command {
        Command::Solve { d, tol, step_cap, c, trajectory_out } => {
            let (c_opt, seq) = match c {
                Some(c) => (None, circle::simulate_sequence(*c, *d, *step_cap)?),
                None => {
                    let sol = circle::solve_optimal_c(*d, *tol, *step_cap)?;
                    (Some(sol.c_opt), sol.sequence)
                }
            };
            let scans = circle::scan_count(&seq).ok();
            if let Some(path) = trajectory_out {
                write_file(path, &json(&TrajectoryFile::from_trajectory(&seq.to_trajectory()?))?)?;
            }
            match format {
                Format::Json => json(&SolveJson { c_opt, scan_count: scans, sequence: &seq })?,
                _ => {
                    let mut s = String::new();
                    if let Some(c) = c_opt {
                        s += &format!("c_opt = {}\n", text(c));
                    }
                    s += &format!("d = {}\n", text(*d));
                    s += &format!("c_simulated = {}\n", text(seq.c));
                    s += &format!("status = {:?}\n", seq.status);
                    if let Some(n) = scans {
                        s += &format!("scans = {n}\n");
                    }
                    s += &format!("x1 = {}\n", text(seq.steps.first().copied().unwrap_or(seq.terminal_step)));
                    s += "step,length,angle\n";
                    for (k, (x, a)) in seq.steps.iter().zip(&seq.angles).enumerate() {
                        s += &format!("{},{},{}\n", k + 1, text(*x), text(*a));
                    }
                    s
                }
            }
        }
        Command::Curve { d_min, d_max, samples } => {
            let curve = circle::ratio_curve(*d_min, *d_max, *samples)?;
            match format {
                Format::Svg => plot::render_svg(&curve)?,
                Format::Json => json(&curve)?,
                Format::Text => curve
                    .iter()
                    .map(|s| format!("d = {}  c_opt = {}  scans = {}\n", text(s.d), text(s.c_opt), s.n_scans))
                    .collect(),
                Format::Csv => {
                    let mut s = String::from("d,c_opt,n_scans,x1\n");
                    for p in &curve {
                        s += &format!("{},{},{},{}\n", csv(p.d), csv(p.c_opt), p.n_scans, csv(p.x1));
                    }
                    s
                }
            }
        }
        Command::Thresholds { max_scans, tol } => {
            let rows = circle::threshold_table(*max_scans, *tol)?;
            match format {
                Format::Json => json(&rows)?,
                Format::Text => {
                    let mut s = String::from("scans  max d      c at max d\n");
                    for r in &rows {
                        s += &format!("{:>5}  {}  {}\n", r.n_scans, text(r.d_max), text(r.c_at_d_max));
                    }
                    s
                }
                _ => {
                    let mut s = String::from("n_scans,d_max,c_at_d_max\n");
                    for r in &rows {
                        s += &format!("{},{},{}\n", r.n_scans, csv(r.d_max), csv(r.c_at_d_max));
                    }
                    s
                }
            }
        }
        Command::Verify { trajectory } => {
            let traj = TrajectoryFile::read(trajectory)?.to_trajectory()?;
            let cert = evaluate_trajectory(&traj);
            match format {
                Format::Json => json(&cert)?,
                _ => {
                    let mut s = format!("worst_ratio = {}\n", text(cert.worst_ratio));
                    s += &format!("binding_index = {}\n", cert.binding_index);
                    s += &format!("complete = {}\n", cert.complete);
                    s += "index,robot_cost,opt_cost,ratio\n";
                    for p in &cert.per_position {
                        s += &format!("{},{},{},{}\n", p.index, text(p.robot_cost), text(p.opt_cost), text(p.ratio));
                    }
                    s
                }
            }
        }
        Command::Lowerbound { delta, step_cap } => {
            let reports = delta
                .iter()
                .map(|&dl| bounds::lower_bound_experiment(dl, *step_cap))
                .collect::<cornerscan::Result<Vec<_>>>()?;
            match format {
                Format::Json => json(&reports)?,
                Format::Csv => {
                    let mut s = String::from("delta,steps,violations,total_distance,distance_bound\n");
                    for r in &reports {
                        s += &format!(
                            "{},{},{},{},{}\n",
                            csv(r.delta),
                            r.steps.len(),
                            r.bound_violations.len(),
                            csv(r.total_distance),
                            csv(r.distance_bound)
                        );
                    }
                    s
                }
                _ => {
                    let mut s = String::from("delta     steps  violations  total      1/delta\n");
                    for r in &reports {
                        s += &format!(
                            "{:<8}  {:>5}  {:>10}  {}  {}\n",
                            r.delta,
                            r.steps.len(),
                            r.bound_violations.len(),
                            text(r.total_distance),
                            text(r.distance_bound)
                        );
                    }
                    s
                }
            }
        }
        Command::Asymptotics { epsilon, n, d_cap } => {
            let report = bounds::asymptotic_witness_with_cap(*epsilon, *n, *d_cap)?;
            let summary = report.summary();
            match format {
                Format::Json => json(&summary)?,
                _ => format!(
                    "epsilon = {}\nN = {}\nstatus = {:?}\nd_used = {}\nsteps = {}\nliftoff_ok = {}\naverage_ok = {}\nglide_ok = {}\nreached = {}\n",
                    text(summary.epsilon),
                    summary.n,
                    summary.status,
                    text(summary.d_used),
                    summary.steps_taken,
                    summary.liftoff_ok,
                    summary.average_ok,
                    summary.glide_ok,
                    summary.reached
                ),
            }
        }
        Command::Optimize { d, n, restarts, seed } => {
            let r = global::global_optimize_seeded(*d, *n, *restarts, *seed)?;
            let traj = r.trajectory()?;
            match format {
                Format::Json => json(&OptimizeJson {
                    d: r.d,
                    points: traj.points().iter().map(|p| [p.theta, p.r]).collect(),
                    ends_at_corner: true,
                    c_achieved: r.c_achieved,
                    iterations: r.iterations,
                    converged: r.converged,
                })?,
                _ => {
                    let mut s = format!("c_achieved = {}\nd = {}\nn = {}\n", text(r.c_achieved), text(r.d), r.n);
                    s += &format!("iterations = {}\nconverged = {}\ntheta,r\n", r.iterations, r.converged);
                    for p in &r.points {
                        s += &format!("{},{}\n", text(p.theta), text(p.r));
                    }
                    s
                }
            }
        }
        Command::Reproduce => {
            let checks = reproduce::run_all();
            all_passed = checks.iter().all(|c| c.passed);
            reproduce::render(&checks)
        }
    };
    Ok(Outcome { body, all_passed })
}

/// Executes and emits; returns the process exit status.
pub fn run(cli: &Cli) -> u8 {
    let outcome = match execute(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let emitted = match &cli.output {
        Some(path) => write_file(path, &outcome.body),
        None => std::io::stdout()
            .write_all(outcome.body.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}"))),
    };
    if let Err(e) = emitted {
        eprintln!("error: {e}");
        return e.exit_code();
    }
    if outcome.all_passed {
        0
    } else {
        1
    }
}
