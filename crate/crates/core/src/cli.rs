//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O, schema or usage error, 2 inadmissible
//! spec, 3 verification suite failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::builder::{build_loop_spec, discriminant_at, reflect_spec, LoopSpec, SubfunctionBound};
use crate::fourier::uniform_grid;
use crate::loops::CircleLoop;
use crate::specfile::{SpecFile, MAX_GRID_N};
use crate::tolerances::Tolerances;
use crate::verify::{
    baer_suite, check_isomorphism_pair, oracle_crosscheck_suite, psl2_suite, run_axiom_suite, SuiteResult,
    DEFAULT_SEED,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INADMISSIBLE: i32 = 2;
pub const EXIT_SUITE_FAILED: i32 = 3;

/// Conjugate transversals sampled by the baer suite.
const BAER_BETAS: usize = 64;
const BAER_T_GRID: usize = 4096;
const ORACLE_GRID: usize = 1024;

#[derive(Debug, Parser)]
#[command(name = "circloop", version, about = "Build and verify smooth loops on the circle")]
pub struct Cli {
    /// Validation grid size (overrides the spec file)
    #[arg(long, global = true, value_name = "N")]
    grid: Option<usize>,

    /// Read angle arguments in degrees
    #[arg(long, global = true)]
    degrees: bool,

    #[arg(long, global = true, value_name = "X")]
    delta_strict: Option<f64>,

    #[arg(long, global = true, value_name = "X")]
    tol_eq: Option<f64>,

    #[arg(long, global = true, value_name = "X")]
    bisection_tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a spec and print its report
    Validate {
        spec: PathBuf,
        /// Print only the JSON report
        #[arg(long)]
        json: bool,
    },
    /// Print s ∗ t
    #[command(allow_negative_numbers = true)]
    Mul { spec: PathBuf, s: f64, t: f64 },
    /// Print y with a ∗ y = b
    #[command(allow_negative_numbers = true)]
    Ldiv { spec: PathBuf, a: f64, b: f64 },
    /// Print x with x ∗ a = b
    #[command(allow_negative_numbers = true)]
    Rdiv { spec: PathBuf, b: f64, a: f64 },
    /// Write the multiplication table on an (n+1) × (n+1) grid as CSV
    Table {
        spec: PathBuf,
        #[arg(short, value_parser = clap::value_parser!(u32).range(2..=4096))]
        n: u32,
        /// Output file (stdout if omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write t, f, g, h and the discriminant on the validation grid as CSV
    PlotData {
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run verification suites
    Check {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Grid used by the axiom and isomorphism suites
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(2..=1024))]
        suite_grid: u64,
        /// Run the suites even if the spec is inadmissible
        #[arg(long)]
        skip_validation: bool,
        /// Print only the JSON results
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Axioms,
    Baer,
    Isomorphism,
    Oracle,
    Psl2,
    All,
}

/// Failure of a command, already mapped to its exit code.
struct Exit(i32, String);

impl Exit {
    fn usage(msg: impl ToString) -> Self {
        Exit(EXIT_USAGE, msg.to_string())
    }
}

type CmdResult = std::result::Result<i32, Exit>;

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        Exit::usage(e)
    }
}

/// Formats like C's `%.12g`.
pub fn format_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..DIGITS).contains(&exp) {
        format!("{}e{}{:02}", trim(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        trim(&format!("{:.*}", (DIGITS - 1 - exp) as usize, x))
    }
}

/// An angle in `[0, 2π)` whose rounded text never reads as `2π`.
fn format_angle(x: f64) -> String {
    let s = format_sig(x);
    match s.parse::<f64>() {
        Ok(v) if v >= std::f64::consts::TAU => "0".into(),
        _ => s,
    }
}

impl Cli {
    fn angle(&self, x: f64) -> f64 {
        if self.degrees {
            x.to_radians()
        } else {
            x
        }
    }

    fn tolerances(&self, file: &SpecFile) -> std::result::Result<Tolerances, Exit> {
        let mut tol = file.tolerances();
        if let Some(n) = self.grid {
            if n > MAX_GRID_N {
                return Err(Exit::usage(format!("--grid {n} exceeds {MAX_GRID_N}")));
            }
            tol.grid_n = n;
        }
        for (name, flag, slot) in [
            ("--delta-strict", self.delta_strict, &mut tol.delta_strict),
            ("--tol-eq", self.tol_eq, &mut tol.tol_eq),
            ("--bisection-tol", self.bisection_tol, &mut tol.bisection_tol),
        ] {
            if let Some(v) = flag {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Exit::usage(format!("{name} must be positive and finite")));
                }
                *slot = v;
            }
        }
        Ok(tol)
    }

    fn load(&self, path: &Path) -> std::result::Result<LoopSpec, Exit> {
        let file = SpecFile::load(path).map_err(Exit::usage)?;
        let tol = self.tolerances(&file)?;
        let r = file.weight().map_err(Exit::usage)?;
        let g = file.shear().map_err(Exit::usage)?;
        build_loop_spec(&r, &g, &tol).map_err(Exit::usage)
    }

    /// Loads a spec and refuses inadmissible ones.
    fn load_loop(&self, path: &Path) -> std::result::Result<(LoopSpec, CircleLoop), Exit> {
        let spec = self.load(path)?;
        match CircleLoop::new(&spec) {
            Ok(lp) => Ok((spec, lp)),
            Err(_) => Err(Exit(EXIT_INADMISSIBLE, inadmissible_message(&spec))),
        }
    }
}

fn inadmissible_message(spec: &LoopSpec) -> String {
    let names: Vec<&str> = spec.report().failures.iter().map(|f| f.condition).collect();
    format!("spec is inadmissible: {}", names.join(", "))
}

fn write_csv<W: Write>(sink: W, header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()
}

/// Writes to `path`, or to `out` when no path is given. The file is created
/// only after the rows are computed.
fn emit_csv(path: Option<&Path>, out: &mut dyn Write, header: &[&str], rows: Vec<Vec<String>>) -> io::Result<()> {
    match path {
        Some(p) => write_csv(File::create(p)?, header, rows.into_iter()),
        None => write_csv(out, header, rows.into_iter()),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn print_report(spec: &LoopSpec, json_only: bool, out: &mut dyn Write) -> io::Result<()> {
    let rep = spec.report();
    if !json_only {
        let tol = &rep.tolerances;
        let fm = &rep.f_membership;
        writeln!(out, "verdict: {}", if rep.verdict { "admissible" } else { "inadmissible" })?;
        writeln!(
            out,
            "grid_n = {}, delta_strict = {:e}, tol_eq = {:e}, bisection_tol = {:e}",
            tol.grid_n, tol.delta_strict, tol.tol_eq, tol.bisection_tol
        )?;
        writeln!(out, "weight identity residual: {:.3e}", fm.sum_identity_residual)?;
        writeln!(
            out,
            "weight positivity margin: {:.6e} at t = {:.6}",
            fm.positivity_margin, fm.positivity_worst_t
        )?;
        writeln!(out, "energy slack: {:.6e}", fm.energy_slack)?;
        writeln!(
            out,
            "f_inv minimum: {:.6e} at t = {:.6}",
            rep.positivity_margin_f, rep.positivity_worst_t
        )?;
        writeln!(
            out,
            "discriminant margin: {:.6e} at t = {:.6}",
            rep.discriminant_margin, rep.discriminant_worst_t
        )?;
        writeln!(out, "initial slope margin: {:.6e}", rep.initial_slope_margin)?;
        writeln!(
            out,
            "g lower bound margin: {:.6e} at t = {:.6}",
            rep.g_lower_bound_margin, rep.g_lower_bound_worst_t
        )?;
        writeln!(out, "integral inequality: {:.6e}", rep.integral_inequality_value)?;
        if rep.lower_bound_without_discriminant {
            writeln!(out, "note: g lower bound holds but the discriminant condition fails")?;
        }
        for f in &rep.failures {
            match f.worst_t {
                Some(t) => writeln!(out, "FAILED {}: {:.6e} at t = {:.6}", f.condition, f.value, t)?,
                None => writeln!(out, "FAILED {}: {:.6e}", f.condition, f.value)?,
            }
        }
        writeln!(out)?;
    }
    writeln!(out, "{}", to_json(rep))
}

#[derive(Serialize)]
struct CheckOutput<'a> {
    tolerances: &'a Tolerances,
    seed: u64,
    suites: &'a [SuiteResult],
}

fn run_suites(spec: &LoopSpec, lp: &CircleLoop, suite: Suite, seed: u64, grid: usize) -> Vec<SuiteResult> {
    let wants = |s: Suite| suite == Suite::All || suite == s;
    let mut results = Vec::new();
    if wants(Suite::Axioms) {
        results.push(run_axiom_suite(lp, grid, seed));
    }
    if wants(Suite::Baer) {
        results.push(baer_suite(lp, BAER_BETAS, BAER_T_GRID));
    }
    if wants(Suite::Isomorphism) {
        let reflected = reflect_spec(spec);
        let target = if spec.is_admissible() {
            CircleLoop::new(&reflected).ok()
        } else {
            Some(CircleLoop::unchecked(
                lp.f_inv().reflected(),
                lp.g().reflected().scaled(-1.0),
                *lp.tolerances(),
            ))
        };
        if let Some(target) = target {
            results.push(check_isomorphism_pair(lp, &target, grid));
        }
    }
    if wants(Suite::Oracle) {
        results.push(oracle_crosscheck_suite(spec, ORACLE_GRID, seed));
    }
    if wants(Suite::Psl2) {
        results.push(psl2_suite(lp));
    }
    results
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    match &cli.command {
        Command::Validate { spec, json } => {
            let spec = cli.load(spec)?;
            print_report(&spec, *json, out)?;
            Ok(if spec.is_admissible() { EXIT_OK } else { EXIT_INADMISSIBLE })
        }
        Command::Mul { spec, s, t } => {
            let (_, lp) = cli.load_loop(spec)?;
            writeln!(out, "{:.12}", lp.mul(cli.angle(*s), cli.angle(*t)).radians())?;
            Ok(EXIT_OK)
        }
        Command::Ldiv { spec, a, b } => {
            let (_, lp) = cli.load_loop(spec)?;
            let y = lp.ldiv(cli.angle(*a), cli.angle(*b)).map_err(Exit::usage)?;
            writeln!(out, "{:.12}", y.radians())?;
            Ok(EXIT_OK)
        }
        Command::Rdiv { spec, b, a } => {
            let (_, lp) = cli.load_loop(spec)?;
            let x = lp.rdiv(cli.angle(*b), cli.angle(*a)).map_err(Exit::usage)?;
            writeln!(out, "{:.12}", x.radians())?;
            Ok(EXIT_OK)
        }
        Command::Table { spec, n, output } => {
            let (_, lp) = cli.load_loop(spec)?;
            let n = *n as usize;
            let angles: Vec<f64> = (0..=n).map(|j| std::f64::consts::TAU * j as f64 / n as f64).collect();
            let rows = angles
                .iter()
                .flat_map(|&s| angles.iter().map(move |&t| (s, t)))
                .map(|(s, t)| vec![format_sig(s), format_sig(t), format_angle(lp.mul(s, t).radians())])
                .collect();
            emit_csv(output.as_deref(), out, &["s", "t", "product"], rows)?;
            Ok(EXIT_OK)
        }
        Command::PlotData { spec, output } => {
            let (spec, lp) = cli.load_loop(spec)?;
            let grid_n = spec.tolerances().grid_n;
            let h = SubfunctionBound::new(spec.f_inv(), grid_n).map_err(Exit::usage)?;
            let rows = uniform_grid(grid_n)
                .map(|t| {
                    vec![
                        format_sig(t),
                        format_sig(lp.f(t)),
                        format_sig(spec.g().eval(t)),
                        format_sig(h.eval(t)),
                        format_sig(discriminant_at(spec.f_inv(), spec.g(), t)),
                    ]
                })
                .collect();
            emit_csv(output.as_deref(), out, &["t", "f", "g", "h", "disc"], rows)?;
            Ok(EXIT_OK)
        }
        Command::Check {
            spec,
            suite,
            seed,
            suite_grid,
            skip_validation,
            json,
        } => {
            let (spec, lp) = if *skip_validation {
                let spec = cli.load(spec)?;
                let lp = CircleLoop::unchecked(spec.f_inv().clone(), spec.g().clone(), *spec.tolerances());
                (spec, lp)
            } else {
                cli.load_loop(spec)?
            };
            let results = run_suites(&spec, &lp, *suite, *seed, *suite_grid as usize);
            if !json {
                for r in &results {
                    writeln!(
                        out,
                        "{:<12} {}  worst = {:.3e}  tol = {:.0e}  cases = {}",
                        r.suite_name,
                        if r.passed { "PASS" } else { "FAIL" },
                        r.worst_violation,
                        r.tolerance,
                        r.cases_run
                    )?;
                    if let Some(note) = &r.note {
                        writeln!(out, "             {note}")?;
                    }
                    for d in r.details.iter().filter(|d| !r.passed && d.value > r.tolerance) {
                        writeln!(out, "             violated {} = {:.3e} at {:?}", d.check, d.value, d.location)?;
                    }
                }
                writeln!(out)?;
            }
            let report = CheckOutput {
                tolerances: spec.tolerances(),
                seed: *seed,
                suites: &results,
            };
            writeln!(out, "{}", to_json(&report))?;
            Ok(if results.iter().all(|r| r.passed) {
                EXIT_OK
            } else {
                EXIT_SUITE_FAILED
            })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
