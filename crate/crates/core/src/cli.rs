//! Command-line interface.
//!
//! Exit codes: `0` success (including an exhausted search), `1` failed
//! verification, `2` invalid input, `3` numerical enumeration failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::problem::{ConeStatus, ProblemSpec};
use crate::shoot::{
    self, continue_branch, find_nodal, lattice_starts, trajectory_nodal_class, Forcing, Nonlinearity, ShootOptions,
    Solution,
};
use crate::solvability::{self, IntervalKind};
use crate::svg::{Plot, Series};
use crate::{fucik, spectrum, verify, Sign};

/// Boundary data as read from a JSON problem file. Missing sides are Dirichlet.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    pub alpha_minus: Vec<f64>,
    #[serde(default)]
    pub eta_minus: Vec<f64>,
    #[serde(default)]
    pub alpha_plus: Vec<f64>,
    #[serde(default)]
    pub eta_plus: Vec<f64>,
    #[serde(default)]
    pub allow_outside_cone: bool,
}

impl ProblemFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidProblem(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::InvalidProblem(format!("{}: {e}", path.display())))
    }

    /// Validates into a [`ProblemSpec`]. Data with `sum |alpha_i| >= 1` is
    /// always rejected; negative coefficients need `allow_outside_cone`.
    pub fn to_spec(&self, allow_outside_cone: bool) -> Result<ProblemSpec> {
        let spec = ProblemSpec::new(
            self.alpha_minus.clone(),
            self.eta_minus.clone(),
            self.alpha_plus.clone(),
            self.eta_plus.clone(),
        )?;
        match spec.cone_status() {
            ConeStatus::InsideAPlus => Ok(spec),
            ConeStatus::InsideAOnly if allow_outside_cone || self.allow_outside_cone => Ok(spec),
            ConeStatus::InsideAOnly => Err(Error::InvalidProblem(
                "negative alpha entries; pass --allow-outside-cone to accept".into(),
            )),
            ConeStatus::Outside => Err(Error::InvalidProblem("sum of |alpha_i| must be below 1 on each side".into())),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "jumpspec", version, about = "Half-eigenvalues and Fucik curves, with shooting solvers, for -u'' = lambda (a u+ - b u-) with multi-point boundary conditions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ProblemArgs {
    /// JSON problem file; Dirichlet conditions when omitted
    #[arg(long)]
    problem: Option<PathBuf>,
    /// Accept boundary coefficients with negative entries
    #[arg(long)]
    allow_outside_cone: bool,
}

impl ProblemArgs {
    fn spec(&self) -> Result<ProblemSpec> {
        match &self.problem {
            Some(p) => ProblemFile::read(p)?.to_spec(self.allow_outside_cone),
            None => Ok(ProblemSpec::dirichlet()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Halflinear,
    Nonlinear,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Half-eigenvalues lambda_{k,nu}(a, b) for k <= kmax, as CSV
    Spectrum {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fucik curves sigma_{F,k,nu} for k <= kmax, as CSV and optionally SVG
    Fucik {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        /// Number of Chebyshev angles in (0, pi/2)
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Locate lambda among the half-eigenvalues and report the degree, as JSON
    Classify {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
    },
    /// Shooting search for solutions of the forced half-linear or nonlinear problem
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Defaults to nonlinear when --f is given
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<f64>,
        /// Nonlinearity: linear:c, jumping:a,b, rational_bump:f0,finf, atan_shift:a,b,c
        #[arg(long)]
        f: Option<String>,
        /// Forcing: zero, one, const:c, step:x0[:level], samples:path
        #[arg(long, default_value = "zero")]
        h: String,
        /// Follow the branch to a solution of nodal class k,nu (nonlinear, h = zero)
        #[arg(long)]
        nodal: Option<String>,
        /// Starts per axis of the multistart lattice
        #[arg(long, default_value_t = 21)]
        lattice: usize,
        /// Half-width of the lattice in (c, d)
        #[arg(long, default_value_t = 10.0)]
        range: f64,
        /// Output directory for solution CSVs and summary.json
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Continue the bifurcating branch of -u'' = lambda f(u) with nodal class k,nu
    Branch {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "1,+")]
        nodal: String,
        #[arg(long, default_value_t = 500)]
        max_steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Golden checks of the two worked examples with negative coefficients
    VerifyExamples,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => 2,
            };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Maps a library error to the exit-code contract.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonPositiveGamma { .. }
        | Error::InvalidProblem(_)
        | Error::InvalidArgument(_)
        | Error::OutsideCone
        | Error::NotSplitInterval(_)
        | Error::ConditionFails { .. } => 2,
        _ => 3,
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(format!("{}: {e}", path.display()))
}

/// Floats in CSV carry 17 significant digits.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let conv = |e: csv::Error| Error::InvalidArgument(e.to_string());
    w.write_record(header).map_err(conv)?;
    for r in rows {
        w.write_record(r).map_err(conv)?;
    }
    w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn emit(out: &Option<PathBuf>, bytes: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => fs::write(p, bytes).map_err(|e| io_err(p, e)),
        None => stdout.write_all(bytes).map_err(|e| Error::InvalidArgument(e.to_string())),
    }
}

/// Parses `k,nu`, e.g. `1,+` or `2,-`.
pub fn parse_nodal(s: &str) -> Result<(usize, Sign)> {
    let bad = || Error::InvalidArgument(format!("expected k,nu such as 1,+ but got {s:?}"));
    let (k, nu) = s.split_once(',').ok_or_else(bad)?;
    let k: usize = k.trim().parse().map_err(|_| bad())?;
    let nu: Sign = nu.trim().parse().map_err(|_| bad())?;
    if k == 0 {
        return Err(bad());
    }
    Ok((k, nu))
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Spectrum { problem, a, b, kmax, out } => {
            let spec = problem.spec()?;
            let rows = spectrum_rows(&spec, a, b, kmax, stderr)?;
            let bytes = csv_bytes(&["k", "nu", "lambda", "s", "delta", "residual"], &rows)?;
            emit(&out, &bytes, stdout)?;
            Ok(0)
        }
        Command::Fucik {
            problem,
            kmax,
            grid,
            out,
            svg,
        } => {
            let spec = problem.spec()?;
            if grid < 3 {
                return Err(Error::InvalidArgument(format!("--grid must be at least 3, got {grid}")));
            }
            if kmax == 0 {
                return Err(Error::InvalidArgument("--kmax must be positive".into()));
            }
            let curves = fucik::trace_all(&spec, kmax, &fucik::chebyshev_theta_grid(grid, 0.02))?;
            let mut rows = Vec::new();
            for ((k, nu), samples) in &curves {
                for s in samples {
                    rows.push(vec![
                        k.to_string(),
                        nu.to_string(),
                        num(s.theta),
                        num(s.lambda),
                        num(s.point_a),
                        num(s.point_b),
                    ]);
                }
            }
            emit(&out, &csv_bytes(&["k", "nu", "theta", "lambda", "a", "b"], &rows)?, stdout)?;
            if let Some(path) = svg {
                let series: Vec<Series> = curves
                    .iter()
                    .map(|((k, nu), samples)| Series {
                        label: format!("k={k} nu={nu}"),
                        points: samples.iter().map(|s| (s.point_a, s.point_b)).collect(),
                    })
                    .collect();
                let doc = Plot::auto("Fucik curves", &series).render(&series);
                fs::write(&path, doc).map_err(|e| io_err(&path, e))?;
            }
            Ok(0)
        }
        Command::Classify { problem, a, b, lambda } => {
            let spec = problem.spec()?;
            let c = solvability::classify_lambda(&spec, a, b, lambda)?;
            let forcing = match c.kind {
                IntervalKind::Split(_) => Some(solvability::nonsolvable_forcing(&spec, a, b, lambda)?),
                _ => None,
            };
            let nu = match c.kind {
                IntervalKind::NearHalfEigenvalue(_, nu) => Some(nu),
                _ => None,
            };
            let doc = json!({
                "kind": c.kind.label(),
                "k": c.kind.k(),
                "nu": nu,
                "degree": c.degree,
                "b_sign": c.b_sign,
                "bounds": [c.lower, c.upper],
                "forcing": forcing,
            });
            writeln!(stdout, "{doc}").map_err(|e| Error::InvalidArgument(e.to_string()))?;
            Ok(0)
        }
        Command::Solve {
            problem,
            mode,
            a,
            b,
            lambda,
            f,
            h,
            nodal,
            lattice,
            range,
            out,
        } => {
            let spec = problem.spec()?;
            let h = Forcing::parse(&h)?;
            let mode = mode.unwrap_or(if f.is_some() { Mode::Nonlinear } else { Mode::Halflinear });
            let opts = ShootOptions::default();
            if lattice == 0 || !(range > 0.0) {
                return Err(Error::InvalidArgument("--lattice and --range must be positive".into()));
            }
            let starts = lattice_starts(lattice, range);
            let solutions = match mode {
                Mode::Halflinear => {
                    let lambda = lambda.ok_or_else(|| Error::InvalidArgument("halflinear mode needs --lambda".into()))?;
                    shoot::solve_halflinear(&spec, a, b, lambda, &h, &starts, &opts)?
                }
                Mode::Nonlinear => {
                    let nl = Nonlinearity::parse(f.as_deref().ok_or_else(|| Error::InvalidArgument("nonlinear mode needs --f".into()))?)?;
                    match nodal {
                        Some(n) => {
                            if !matches!(h, Forcing::Zero) {
                                return Err(Error::InvalidArgument("--nodal needs --h zero".into()));
                            }
                            let (k, nu) = parse_nodal(&n)?;
                            vec![find_nodal(&spec, &nl, k, nu, 5000)?]
                        }
                        None => shoot::solve_nonlinear(&spec, &nl, &h, &starts, &opts)?,
                    }
                }
            };
            let summary = solve_summary(&solutions, lattice, range, opts.tol);
            if solutions.is_empty() {
                let _ = writeln!(
                    stderr,
                    "search exhausted: no solution found over the {lattice}x{lattice} lattice on [-{range},{range}]^2 with tolerance {:e}",
                    opts.tol
                );
            }
            match &out {
                Some(dir) => {
                    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
                    for (i, s) in solutions.iter().enumerate() {
                        let path = dir.join(format!("solution_{i:03}.csv"));
                        fs::write(&path, trajectory_csv(s)?).map_err(|e| io_err(&path, e))?;
                    }
                    let path = dir.join("summary.json");
                    let text = serde_json::to_string_pretty(&summary).expect("serializable") + "\n";
                    fs::write(&path, text).map_err(|e| io_err(&path, e))?;
                }
                None => {
                    writeln!(stdout, "{summary}").map_err(|e| Error::InvalidArgument(e.to_string()))?;
                }
            }
            Ok(0)
        }
        Command::Branch {
            problem,
            f,
            nodal,
            max_steps,
            out,
            svg,
        } => {
            let spec = problem.spec()?;
            let nl = Nonlinearity::parse(&f)?;
            let (k, nu) = parse_nodal(&nodal)?;
            if max_steps < 2 {
                return Err(Error::InvalidArgument("--max-steps must be at least 2".into()));
            }
            let pts = continue_branch(&spec, &nl, k, nu, max_steps)?;
            let rows: Vec<Vec<String>> = pts
                .iter()
                .map(|p| vec![num(p.lambda), num(p.amplitude), num(p.c), num(p.d)])
                .collect();
            emit(&out, &csv_bytes(&["lambda", "amplitude", "c", "d"], &rows)?, stdout)?;
            if let Some(path) = svg {
                let series = vec![Series {
                    label: format!("k={k} nu={nu}"),
                    points: pts.iter().map(|p| (p.lambda, p.amplitude)).collect(),
                }];
                let mut plot = Plot::auto(&format!("branch of {}", nl.name()), &series);
                plot.x_label = "lambda".into();
                plot.y_label = "sup |u|".into();
                plot.diagonal = false;
                plot.x_max = 1.1 * pts.iter().map(|p| p.lambda).fold(0.0, f64::max);
                fs::write(&path, plot.render(&series)).map_err(|e| io_err(&path, e))?;
            }
            Ok(0)
        }
        Command::VerifyExamples => {
            let checks = verify::run_all()?;
            let mut ok = true;
            for c in &checks {
                ok &= c.passed;
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(stdout, "{tag}  {}  [{}]", c.name, c.detail).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn spectrum_rows(spec: &ProblemSpec, a: f64, b: f64, kmax: usize, stderr: &mut dyn Write) -> Result<Vec<Vec<String>>> {
    if spec.in_cone() {
        let recs = spectrum::half_eigenvalues(spec, a, b, kmax)?;
        return Ok(recs
            .iter()
            .map(|r| {
                vec![
                    r.k.to_string(),
                    r.nu.to_string(),
                    num(r.lambda),
                    num(r.s),
                    num(r.delta.value()),
                    num(r.residual),
                ]
            })
            .collect());
    }
    // raw roots up to the usual bracket; unclassified ones get empty (k, nu)
    let _ = writeln!(stderr, "warning: boundary data outside the cone; listing raw roots");
    let p = crate::JumpingProfile::from_coefficients(a, b)?;
    let roots = spectrum::scan_half_eigenvalues(spec, a, b, spectrum::sweep_upper(&p, kmax))?;
    Ok(roots
        .iter()
        .map(|r| {
            let (k, nu) = match r.class {
                Some((k, nu)) => (k.to_string(), nu.to_string()),
                None => (String::new(), String::new()),
            };
            vec![k, nu, num(r.lambda), num(r.root.s), num(r.root.delta.value()), num(r.root.residual.abs())]
        })
        .collect())
}

fn trajectory_csv(s: &Solution) -> Result<Vec<u8>> {
    let t = &s.trajectory;
    let rows: Vec<Vec<String>> = t
        .grid()
        .iter()
        .zip(t.values())
        .zip(t.derivatives())
        .map(|((x, u), du)| vec![num(*x), num(*u), num(*du)])
        .collect();
    csv_bytes(&["x", "u", "du"], &rows)
}

fn solve_summary(solutions: &[Solution], lattice: usize, range: f64, tol: f64) -> serde_json::Value {
    let items: Vec<serde_json::Value> = solutions
        .iter()
        .map(|s| {
            let (k, nu) = trajectory_nodal_class(&s.trajectory);
            json!({
                "c": s.state.c,
                "d": s.state.d,
                "residual_minus": s.state.residual_minus,
                "residual_plus": s.state.residual_plus,
                "amplitude": s.trajectory.amplitude(),
                "nodal": {"k": k, "nu": nu},
            })
        })
        .collect();
    json!({
        "count": solutions.len(),
        "status": if solutions.is_empty() { "search_exhausted" } else { "found" },
        "lattice": {"n": lattice, "half_width": range},
        "tolerance": tol,
        "solutions": items,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("jumpspec").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn nodal_argument() {
        assert_eq!(parse_nodal("1,+").unwrap(), (1, Sign::Plus));
        assert_eq!(parse_nodal(" 3 , - ").unwrap(), (3, Sign::Minus));
        assert!(parse_nodal("0,+").is_err());
        assert!(parse_nodal("1").is_err());
    }

    #[test]
    fn problem_file_validation() {
        let f = ProblemFile {
            alpha_plus: vec![0.6, 0.5],
            eta_plus: vec![0.0, 0.2],
            ..Default::default()
        };
        assert!(matches!(f.to_spec(true), Err(Error::InvalidProblem(_))));
        let f = ProblemFile {
            alpha_plus: vec![-0.5],
            eta_plus: vec![0.0],
            ..Default::default()
        };
        assert!(f.to_spec(false).is_err());
        assert_eq!(f.to_spec(true).unwrap().cone_status(), ConeStatus::InsideAOnly);
        let parsed: ProblemFile = serde_json::from_str(r#"{"alpha_plus":[0.5],"eta_plus":[0.0]}"#).unwrap();
        assert!(parsed.to_spec(false).unwrap().in_cone());
    }

    #[test]
    fn classify_json() {
        let (code, out, _) = call(&["classify", "--lambda", "5"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["kind"], "gap");
        assert_eq!(v["k"], 1);
        assert_eq!(v["degree"], -1);
    }

    #[test]
    fn bad_inputs_exit_2() {
        assert_eq!(call(&["fucik", "--grid", "1"]).0, 2);
        assert_eq!(call(&["solve", "--h", "wiggle", "--lambda", "0"]).0, 2);
        assert_eq!(call(&["spectrum", "--problem", "/nonexistent/p.json"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
    }

    #[test]
    fn csv_numbers_have_17_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        let bytes = csv_bytes(&["x"], &[vec![num(1.0)]]).unwrap();
        assert_eq!(String::from_utf8(bytes).unwrap(), "x\n1.0000000000000000e0\n");
    }
}
