//! Batch command-line front end.
//!
//! Every output starts with the crate version and the fully resolved
//! configuration, so a run can be repeated from its own header. Tolerances
//! may be set by flag or by the environment variables `FRACLAP_REL_TOL`,
//! `FRACLAP_ABS_TOL`, `FRACLAP_MAX_SUBDIV` and `FRACLAP_FAR_RADIUS`; flags
//! win.
//!
//! Exit codes: 0 success, 1 numerical failure or failed check, 2 usage error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::ball_solver::{solve_ball, BallProblem};
use crate::counterexample::{build, verify_ce, CEConfig};
use crate::error::{Error, Result};
use crate::frac_op::{frac_s_smooth_with, FracOptions};
use crate::freespace::{cube_grid, positivity_scan, solve_free, FreeProblem};
use crate::geometry::Point;
use crate::kernels::{poisson, KernelContext};
use crate::quadrature::QuadSpec;
use crate::radial::RadialPolyBump;
use crate::verify::{run_suite, SuiteConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "fraclap",
    version,
    about = "Kernels and solvers for higher-order fractional Laplacians"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Run on one thread (results are bit-identical either way; this also
    /// pins the schedule).
    #[arg(long, global = true)]
    pub sequential: bool,

    /// Seed for all sampled points.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,

    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,

    /// Absolute quadrature tolerance.
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,

    /// Output format for field commands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    Green,
    Martin,
    Poisson,
    Fundamental,
    P,
}

#[derive(Debug, Args, Clone, Serialize)]
pub struct Common {
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long)]
    pub order: f64,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a kernel at `(x, y)`; `y` may be repeated.
    GreenEval {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true, required = true)]
        y: Vec<String>,
        #[arg(long, value_enum, default_value_t = Kernel::Green)]
        kernel: Kernel,
    },
    /// `(-Delta)^s` of a radial bump at points.
    FracEval {
        #[command(flatten)]
        common: Common,
        /// Bump as JSON (`{"center":[..],"radius":..,"terms":[{"coef":..,"exponent":..}]}`)
        /// or a path to such a file; default `(1 - |x|^2)_+^{2m+4}`.
        #[arg(long)]
        bump: Option<String>,
        /// Evaluation points; default is a grid along the first axis.
        #[arg(long, allow_hyphen_values = true)]
        x: Vec<String>,
        #[arg(long, default_value_t = 41)]
        grid: usize,
        /// Half-width of the default grid.
        #[arg(long, default_value_t = 2.0)]
        half: f64,
    },
    /// Solve in the unit ball; prints `x, u, d(x)^{-s} u` along the first axis.
    SolveBall {
        #[command(flatten)]
        common: Common,
        /// `one`, `bump`, or a bump as JSON / JSON file.
        #[arg(long, default_value = "one")]
        rhs: String,
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
    /// Convolve with the fundamental solution; prints `x, u` on a cube grid.
    SolveFree {
        #[command(flatten)]
        common: Common,
        /// `bump` or a bump as JSON / JSON file.
        #[arg(long, default_value = "bump")]
        rhs: String,
        #[arg(long, default_value_t = 11)]
        grid: usize,
        #[arg(long, default_value_t = 3.0)]
        half: f64,
        /// Require 2s < N and report the grid minimum (must be positive).
        #[arg(long)]
        regime_check: bool,
    },
    /// Build and verify the sign-changing solution.
    Counterexample {
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, default_value_t = 1.5)]
        order: f64,
        #[arg(long, default_value_t = 1.05)]
        margin: f64,
        #[arg(long)]
        grid: Option<usize>,
        /// Report path; the fields go to `fields.csv` next to it.
        #[arg(long, default_value = "report.json")]
        out: PathBuf,
        #[arg(long)]
        fields: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-3)]
        pairing_tol: f64,
    },
    /// Run the identity checks; exit 0 iff all pass.
    VerifyAll {
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, default_value_t = 1.5)]
        order: f64,
        #[arg(long, default_value = "report.json")]
        report: PathBuf,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::GreenEval { .. } => "green-eval",
            Self::FracEval { .. } => "frac-eval",
            Self::SolveBall { .. } => "solve-ball",
            Self::SolveFree { .. } => "solve-free",
            Self::Counterexample { .. } => "counterexample",
            Self::VerifyAll { .. } => "verify-all",
        }
    }
}

/// Quadrature settings from defaults, then the environment, then flags.
pub fn resolve_spec(cli: &Cli) -> Result<QuadSpec> {
    let mut spec = QuadSpec::default();
    let env_f64 = |k: &str| -> Result<Option<f64>> {
        match std::env::var(k) {
            Ok(v) => v
                .trim()
                .parse::<f64>()
                .map(Some)
                .map_err(|_| Error::Config(format!("{k}={v} is not a number"))),
            Err(_) => Ok(None),
        }
    };
    if let Some(v) = env_f64("FRACLAP_REL_TOL")? {
        spec.rel_tol = v;
    }
    if let Some(v) = env_f64("FRACLAP_ABS_TOL")? {
        spec.abs_tol = v;
    }
    if let Some(v) = env_f64("FRACLAP_MAX_SUBDIV")? {
        spec.max_subdiv = v as usize;
    }
    if let Some(v) = env_f64("FRACLAP_FAR_RADIUS")? {
        spec.far_radius = v;
    }
    if let Some(v) = cli.rel_tol {
        spec.rel_tol = v;
    }
    if let Some(v) = cli.abs_tol {
        spec.abs_tol = v;
    }
    spec.validate()?;
    Ok(spec)
}

fn parse_point(s: &str, dim: usize) -> Result<Point> {
    let c = s
        .split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad coordinate '{t}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    let p = Point::new(&c)?;
    p.check_dim(dim)?;
    Ok(p)
}

fn parse_bump(s: &str, dim: usize) -> Result<RadialPolyBump> {
    let text = if Path::new(s).is_file() {
        fs::read_to_string(s).map_err(|e| Error::Config(format!("{s}: {e}")))?
    } else {
        s.to_string()
    };
    let b: RadialPolyBump =
        serde_json::from_str(&text).map_err(|e| Error::InvalidArgument(format!("bump JSON: {e}")))?;
    if b.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: b.dim(),
        });
    }
    Ok(b)
}

fn default_bump(dim: usize, s: f64, radius: f64) -> Result<RadialPolyBump> {
    let m = (s.ceil() - 1.0).max(0.0);
    RadialPolyBump::single(Point::origin(dim), radius, 1.0, 2.0 * m + 4.0)
}

/// A table of rows with named columns, written as CSV or JSON.
struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
    extra: Vec<String>,
}

impl Table {
    fn new(columns: Vec<String>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            extra: Vec::new(),
        }
    }

    fn write(&self, w: &mut dyn Write, format: Format, config: &Value) -> io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(w, "# fraclap version {VERSION}")?;
                writeln!(w, "# config: {config}")?;
                for e in &self.extra {
                    writeln!(w, "# {e}")?;
                }
                writeln!(w, "{}", self.columns.join(","))?;
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(|v| format!("{v:.17e}")).collect();
                    writeln!(w, "{}", cells.join(","))?;
                }
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        Value::Object(
                            self.columns
                                .iter()
                                .cloned()
                                .zip(r.iter().map(|v| json!(v)))
                                .collect(),
                        )
                    })
                    .collect();
                let doc = json!({"version": VERSION, "config": config, "notes": self.extra, "rows": rows});
                serde_json::to_writer_pretty(&mut *w, &doc)?;
                writeln!(w)?;
            }
        }
        Ok(())
    }
}

fn coord_columns(prefix: &str, dim: usize) -> Vec<String> {
    if dim == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=dim).map(|i| format!("{prefix}{i}")).collect()
    }
}

fn open_out(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    match out {
        Some(p) => Ok(Box::new(io::BufWriter::new(
            fs::File::create(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?,
        ))),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn io_err(e: io::Error) -> Error {
    Error::Config(format!("write failed: {e}"))
}

/// Points strictly inside `(-1, 1)` along the first axis.
fn interior_axis_grid(dim: usize, n: usize) -> Vec<Point> {
    let n = n.max(1);
    (0..n)
        .map(|i| Point::on_axis(dim, -1.0 + 2.0 * (i + 1) as f64 / (n + 1) as f64))
        .collect()
}

fn base_config(cli: &Cli, spec: &QuadSpec) -> Value {
    json!({
        "command": cli.command.name(),
        "seed": cli.seed,
        "sequential": cli.sequential,
        "format": cli.format,
        "quad": spec,
    })
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Some(a), Value::Object(b)) = (a.as_object_mut(), b) {
        a.extend(b);
    }
    a
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    /// Ran, but a check failed.
    Failed(String),
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let spec = resolve_spec(cli)?;
    let base = base_config(cli, &spec);
    match &cli.command {
        Command::GreenEval { common, x, y, kernel } => {
            let ctx = KernelContext::with_spec(common.dim, common.order, spec)?;
            let xp = parse_point(x, common.dim)?;
            let mut cols = coord_columns("x", common.dim);
            cols.extend(coord_columns("y", common.dim));
            cols.push("value".into());
            let mut t = Table::new(cols);
            for ys in y {
                let yp = parse_point(ys, common.dim)?;
                let v = match kernel {
                    Kernel::Green => ctx.green(&xp, &yp)?,
                    Kernel::Martin => ctx.martin(&xp, &yp)?,
                    Kernel::Poisson => poisson(&xp, &yp, common.dim)?,
                    Kernel::Fundamental => ctx.fundamental(&(xp - yp))?,
                    Kernel::P => ctx.poly_p(&xp, &yp)?,
                };
                let mut row = xp.coords().to_vec();
                row.extend_from_slice(yp.coords());
                row.push(v);
                t.rows.push(row);
            }
            let cfg = merge(
                base,
                json!({"dim": common.dim, "order": common.order, "x": x, "y": y, "kernel": kernel}),
            );
            t.write(&mut *open_out(&common.out)?, cli.format, &cfg)
                .map_err(io_err)?;
            Ok(Outcome::Ok)
        }
        Command::FracEval {
            common,
            bump,
            x,
            grid,
            half,
        } => {
            let ctx = KernelContext::with_spec(common.dim, common.order, spec)?;
            let b = match bump {
                Some(s) => parse_bump(s, common.dim)?,
                None => default_bump(common.dim, common.order, 1.0)?,
            };
            let pts: Vec<Point> = if x.is_empty() {
                let n = (*grid).max(2);
                (0..n)
                    .map(|i| Point::on_axis(common.dim, -half + 2.0 * half * i as f64 / (n - 1) as f64))
                    .collect()
            } else {
                x.iter()
                    .map(|s| parse_point(s, common.dim))
                    .collect::<Result<_>>()?
            };
            let mut cols = coord_columns("x", common.dim);
            cols.extend(["value".to_string(), "err_estimate".to_string()]);
            let mut t = Table::new(cols);
            for p in &pts {
                let r = frac_s_smooth_with(&b, p, &ctx, &FracOptions::default())?;
                let mut row = p.coords().to_vec();
                row.extend([r.value, r.err_estimate]);
                t.rows.push(row);
            }
            let cfg = merge(
                base,
                json!({"dim": common.dim, "order": common.order, "bump": b, "grid": grid, "half": half}),
            );
            t.write(&mut *open_out(&common.out)?, cli.format, &cfg)
                .map_err(io_err)?;
            Ok(Outcome::Ok)
        }
        Command::SolveBall { common, rhs, grid } => {
            let ctx = KernelContext::with_spec(common.dim, common.order, spec)?;
            let s = ctx.s();
            let (p, rhs_desc) = match rhs.as_str() {
                "one" => (BallProblem::constant(ctx, 1.0), json!("one")),
                "bump" => {
                    let b = default_bump(common.dim, common.order, 1.0)?;
                    (BallProblem::bump(ctx, b.clone())?, json!(b))
                }
                other => {
                    let b = parse_bump(other, common.dim)?;
                    (BallProblem::new(ctx, Arc::new(b.clone()), "json")?, json!(b))
                }
            };
            let mut cols = coord_columns("x", common.dim);
            cols.extend(["u".to_string(), "d_pow_minus_s_u".to_string()]);
            let mut t = Table::new(cols);
            let pts = interior_axis_grid(common.dim, *grid);
            let vals = pts
                .iter()
                .map(|x| solve_ball(&p, x))
                .collect::<Result<Vec<_>>>()?;
            let mut dmax: f64 = 0.0;
            for (x, u) in pts.iter().zip(vals) {
                let d = 1.0 - x.norm();
                let w = u / d.powf(s);
                dmax = dmax.max(w.abs());
                let mut row = x.coords().to_vec();
                row.extend([u, w]);
                t.rows.push(row);
            }
            t.extra.push(format!("max |d^-s u| = {dmax:.17e}"));
            let cfg = merge(
                base,
                json!({"dim": common.dim, "order": common.order, "rhs": rhs_desc, "grid": grid}),
            );
            t.write(&mut *open_out(&common.out)?, cli.format, &cfg)
                .map_err(io_err)?;
            Ok(Outcome::Ok)
        }
        Command::SolveFree {
            common,
            rhs,
            grid,
            half,
            regime_check,
        } => {
            let ctx = KernelContext::with_spec(common.dim, common.order, spec)?;
            let b = match rhs.as_str() {
                "bump" => default_bump(common.dim, common.order, 0.5)?,
                other => parse_bump(other, common.dim)?,
            };
            let p = FreeProblem::new(ctx, b.clone())?;
            let pts = cube_grid(common.dim, *half, *grid);
            let mut outcome = Outcome::Ok;
            let mut notes = vec![format!("regime = {:?}", p.regime)];
            if *regime_check {
                let min = positivity_scan(&p, &pts)?;
                notes.push(format!("grid minimum = {min:.17e}"));
                if !(min > 0.0) && !b.is_zero() {
                    outcome = Outcome::Failed(format!("grid minimum {min:e} is not positive"));
                }
            }
            let vals = pts
                .iter()
                .map(|x| solve_free(&p, x))
                .collect::<Result<Vec<_>>>()?;
            let mut cols = coord_columns("x", common.dim);
            cols.push("u".into());
            let mut t = Table::new(cols);
            t.extra = notes;
            for (x, u) in pts.iter().zip(vals) {
                let mut row = x.coords().to_vec();
                row.push(u);
                t.rows.push(row);
            }
            let cfg = merge(
                base,
                json!({"dim": common.dim, "order": common.order, "rhs": b, "grid": grid, "half": half, "regime_check": regime_check}),
            );
            t.write(&mut *open_out(&common.out)?, cli.format, &cfg)
                .map_err(io_err)?;
            Ok(outcome)
        }
        Command::Counterexample {
            dim,
            order,
            margin,
            grid,
            out,
            fields,
            pairing_tol,
        } => {
            let mut cfg = if *dim == 1 && *order == 1.5 {
                CEConfig::reference()
            } else {
                CEConfig::along_axis(*dim, *order)?
            };
            cfg.margin = *margin;
            if let Some(g) = grid {
                cfg.grid = *g;
            }
            let res = build(&cfg)?;
            let report = verify_ce(&res, *pairing_tol)?;
            let config = merge(
                base,
                json!({"dim": dim, "order": order, "margin": margin, "pairing_tol": pairing_tol, "ce": cfg}),
            );
            let doc = json!({"version": VERSION, "config": config, "report": report});
            fs::write(
                out,
                serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
            )
            .map_err(|e| Error::Config(format!("{}: {e}", out.display())))?;
            let fpath = fields
                .clone()
                .unwrap_or_else(|| out.parent().unwrap_or_else(|| Path::new("")).join("fields.csv"));
            let mut w = io::BufWriter::new(
                fs::File::create(&fpath).map_err(|e| Error::Config(format!("{}: {e}", fpath.display())))?,
            );
            writeln!(w, "# fraclap version {VERSION}").map_err(io_err)?;
            writeln!(w, "# config: {config}").map_err(io_err)?;
            writeln!(w, "{},u,f,component", coord_columns("x", *dim).join(",")).map_err(io_err)?;
            for r in res.fields()? {
                let xs: Vec<String> = r.x.coords().iter().map(|v| format!("{v:.17e}")).collect();
                writeln!(
                    w,
                    "{},{:.17e},{:.17e},{}",
                    xs.join(","),
                    r.u,
                    r.f,
                    r.component.as_str()
                )
                .map_err(io_err)?;
            }
            w.flush().map_err(io_err)?;
            if report.passed {
                Ok(Outcome::Ok)
            } else {
                Ok(Outcome::Failed("counterexample verification failed".into()))
            }
        }
        Command::VerifyAll {
            dim,
            order,
            report,
            checks,
            samples,
            h,
        } => {
            let names: Vec<&str> = checks
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            let scfg = SuiteConfig {
                dim: *dim,
                s: *order,
                seed: cli.seed,
                h: *h,
                samples: *samples,
            };
            let mut reports = run_suite(&names, &scfg)?;
            let run = merge(
                base,
                json!({"version": VERSION, "dim": dim, "order": order, "checks": checks, "samples": samples, "h": h}),
            );
            for r in &mut reports {
                if let Some(o) = r.context.as_object_mut() {
                    o.insert("run".into(), run.clone());
                }
            }
            fs::write(
                report,
                serde_json::to_string_pretty(&reports).expect("serializable") + "\n",
            )
            .map_err(|e| Error::Config(format!("{}: {e}", report.display())))?;
            for r in &reports {
                println!(
                    "{} {} residual={:.3e} tolerance={:.1e}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.residual,
                    r.tolerance
                );
            }
            let failed: Vec<&str> = reports
                .iter()
                .filter(|r| !r.passed)
                .map(|r| r.name.as_str())
                .collect();
            if failed.is_empty() {
                Ok(Outcome::Ok)
            } else {
                Ok(Outcome::Failed(format!("failed checks: {}", failed.join(", "))))
            }
        }
    }
}

/// Usage-type errors exit with 2, numerical ones with 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidOrder(_)
        | Error::InvalidDimension(_)
        | Error::DimensionMismatch { .. }
        | Error::InvalidArgument(_)
        | Error::Config(_)
        | Error::Regime(_)
        | Error::Domain(_)
        | Error::UnknownCheck(_) => 2,
        _ => 1,
    }
}

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code.
pub fn parse_and_dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let run = || dispatch(&cli);
    let result = if cli.sequential {
        match rayon::ThreadPoolBuilder::new().num_threads(1).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(Error::Config(format!("thread pool: {e}"))),
        }
    } else {
        run()
    };
    match result {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed(msg)) => {
            eprintln!("fraclap: {msg}");
            1
        }
        Err(e) => {
            eprintln!("fraclap: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_and_bumps_parse() {
        assert_eq!(parse_point("0.3,-0.2", 2).unwrap().coords(), &[0.3, -0.2]);
        assert!(parse_point("0.3", 2).is_err());
        assert!(parse_point("a", 1).is_err());
        let b = parse_bump(
            r#"{"center":[0.0],"radius":0.5,"terms":[{"coef":1.0,"exponent":4.0}]}"#,
            1,
        )
        .unwrap();
        assert_eq!(b.radius(), 0.5);
        assert!(parse_bump(r#"{"center":[0.0],"radius":0.5,"terms":[]}"#, 2).is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(parse_and_dispatch(["fraclap", "green-eval", "--bogus"]), 2);
        assert_eq!(
            parse_and_dispatch([
                "fraclap",
                "verify-all",
                "--checks",
                "nope",
                "--report",
                "/dev/null"
            ]),
            2
        );
        assert_eq!(parse_and_dispatch(["fraclap", "--help"]), 0);
    }

    #[test]
    fn ball_grid_is_interior() {
        let g = interior_axis_grid(1, 101);
        assert_eq!(g.len(), 101);
        assert!(g.iter().all(|p| p.norm() < 1.0));
        assert!((g[50].get(0)).abs() < 1e-15);
    }
}
