//! The `detlab` command line.
//!
//! Exit codes: 0 success, 1 internal error, 2 parse or input error, 3 shape
//! error, 4 singular system, 5 property outcome differing from the
//! functional's classification.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::determinant::{det, DetMode};
use crate::error::Error;
use crate::linalg::{reduce_to_diagonal, Matrix};
use crate::main_equation::{verify, DetFunctional, Property, ResidualReport, Witness};
use crate::scalar::{Field, Scalar};
use crate::solver::{cramer_solve, is_linearly_independent, rank, spans_ambient, LinearSystem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SHAPE: i32 = 3;
pub const EXIT_SINGULAR: i32 = 4;
pub const EXIT_VIOLATION: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "detlab",
    version,
    about = "Exact determinants, Cramer's rule and determinant-functional checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// `rational` or `gf:<p>` with p prime
    #[arg(long, global = true, default_value = "rational", value_parser = parse_field)]
    pub field: Field,

    /// `cofactor`, `elimination` or `crosscheck`
    #[arg(long, global = true, default_value = "crosscheck", value_parser = parse_mode)]
    pub algorithm: DetMode,

    #[arg(long, global = true, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Emit one JSON record per line instead of human-readable text
    #[arg(long, global = true)]
    pub machine: bool,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<DetMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Determinant of a square matrix file
    Det {
        /// Matrix file; `-` or omitted reads standard input
        input: Option<PathBuf>,
    },
    /// Solve x_1 v_1 + ... + x_n v_n = b by Cramer's rule
    Solve { input: Option<PathBuf> },
    /// Rank and independence of the rows of a matrix file
    Independent { input: Option<PathBuf> },
    /// Check main equation, multilinearity and antisymmetry of a functional
    Verify {
        /// e.g. `det:3`, `scaled:2:det:2`, `lifted:det:1`, `xminusy`, `xy`
        functional: String,
    },
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let mut out = Output {
        machine: cli.config.machine,
        stdout,
        stderr,
    };
    match execute(&cli, stdin, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let code = exit_code(&e);
            out.error(&e);
            code
        }
    }
}

fn exit_code(e: &CliError) -> i32 {
    match e {
        CliError::Io(_) => EXIT_PARSE,
        CliError::Lib(e) => match e {
            Error::Parse(_) | Error::DivisionByZero | Error::InvalidModulus(_) | Error::FieldMismatch { .. } => {
                EXIT_PARSE
            }
            Error::NotSquare { .. } | Error::DimensionMismatch { .. } | Error::ArityMismatch { .. } => EXIT_SHAPE,
            Error::SingularSystem { .. } => EXIT_SINGULAR,
            _ => EXIT_INTERNAL,
        },
    }
}

#[derive(Debug)]
enum CliError {
    Io(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

struct Output<'a> {
    machine: bool,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Output<'_> {
    fn line(&mut self, text: impl AsRef<str>) {
        let _ = writeln!(self.stdout, "{}", text.as_ref());
    }

    fn record(&mut self, value: Value) {
        let _ = writeln!(self.stdout, "{value}");
    }

    fn error(&mut self, e: &CliError) {
        let msg = match e {
            CliError::Io(m) => m.clone(),
            CliError::Lib(e) => e.to_string(),
        };
        let _ = writeln!(self.stderr, "error: {msg}");
    }
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| CliError::Io(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e: io::Error| CliError::Io(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn strings(values: &[Scalar]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn tuple_text(values: &[Scalar]) -> String {
    format!("({})", strings(values).join(", "))
}

fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut Output<'_>) -> Result<i32, CliError> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Det { input } => {
            let a = Matrix::parse(&read_input(input, stdin)?, cfg.field)?;
            cmd_det(cfg, &a, out)
        }
        Command::Solve { input } => {
            let sys = LinearSystem::parse(&read_input(input, stdin)?, cfg.field)?;
            cmd_solve(cfg, &sys, out)
        }
        Command::Independent { input } => {
            let a = Matrix::parse(&read_input(input, stdin)?, cfg.field)?;
            cmd_independent(cfg, &a, out)
        }
        Command::Verify { functional } => {
            let f = DetFunctional::parse(functional, cfg.field)?;
            cmd_verify(cfg, &f, out)
        }
    }
}

fn cmd_det(cfg: &CliConfig, a: &Matrix, out: &mut Output<'_>) -> Result<i32, CliError> {
    let result = det(a, cfg.algorithm)?;
    let trace = match cfg.algorithm {
        DetMode::Elimination => Some(reduce_to_diagonal(a)?),
        _ => None,
    };
    if out.machine {
        let mut rec = json!({
            "command": "det",
            "field": cfg.field.to_string(),
            "algorithm": result.algorithm.to_string(),
            "det": result.value.to_string(),
        });
        if let Some(t) = &trace {
            rec["swaps"] = json!(t.swap_count);
            rec["diagonal"] = json!(strings(&t.diagonal()));
        }
        out.record(rec);
    } else {
        out.line(format!("det = {}", result.value));
        out.line(format!("algorithm = {}", result.algorithm));
        if let Some(t) = &trace {
            out.line(format!("swaps = {}", t.swap_count));
            out.line(format!("diagonal = {}", strings(&t.diagonal()).join(" ")));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_solve(cfg: &CliConfig, sys: &LinearSystem, out: &mut Output<'_>) -> Result<i32, CliError> {
    match cramer_solve(sys) {
        Ok(sol) => {
            if out.machine {
                out.record(json!({
                    "command": "solve",
                    "field": cfg.field.to_string(),
                    "x": strings(&sol.values),
                    "numerators": strings(&sol.numerators),
                    "base_determinant": sol.base_determinant.to_string(),
                }));
            } else {
                out.line(format!("x = {}", tuple_text(&sol.values)));
                out.line(format!("numerators = {}", tuple_text(&sol.numerators)));
                out.line(format!("base determinant = {}", sol.base_determinant));
            }
            Ok(EXIT_OK)
        }
        Err(Error::SingularSystem { rank, certificate }) => {
            if out.machine {
                out.record(json!({
                    "command": "solve",
                    "field": cfg.field.to_string(),
                    "singular": true,
                    "rank": rank,
                    "certificate": strings(&certificate),
                }));
            } else {
                out.line("singular system");
                out.line(format!("rank = {rank}"));
                out.line(format!("certificate = {}", tuple_text(&certificate)));
            }
            Err(Error::SingularSystem { rank, certificate }.into())
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_independent(cfg: &CliConfig, a: &Matrix, out: &mut Output<'_>) -> Result<i32, CliError> {
    let t = a.to_tuple();
    let (r, independent, spans) = (rank(&t), is_linearly_independent(&t), spans_ambient(&t));
    if out.machine {
        out.record(json!({
            "command": "independent",
            "field": cfg.field.to_string(),
            "rank": r,
            "independent": independent,
            "spans": spans,
        }));
    } else {
        out.line(format!("rank = {r}"));
        out.line(format!("independent = {independent}"));
        out.line(format!("spans = {spans}"));
    }
    Ok(EXIT_OK)
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

fn expectation(expected: Option<bool>) -> &'static str {
    match expected {
        Some(true) => "pass",
        Some(false) => "fail",
        None => "unclassified",
    }
}

fn witness_json(w: &Witness) -> Value {
    use crate::main_equation::Probe;
    let tuple: Vec<Vec<String>> = w.tuple.vectors().iter().map(|v| strings(v.entries())).collect();
    let mut rec = json!({ "tuple": tuple, "residual": strings(&w.residual) });
    match &w.probe {
        Probe::MainEquation { b } => rec["b"] = json!(strings(b.entries())),
        Probe::Additivity { slot, w } => {
            rec["kind"] = json!("additivity");
            rec["slot"] = json!(slot);
            rec["w"] = json!(strings(w.entries()));
        }
        Probe::Homogeneity { slot, s } => {
            rec["kind"] = json!("homogeneity");
            rec["slot"] = json!(slot);
            rec["s"] = json!(s.to_string());
        }
        Probe::Antisymmetry { i, j } => rec["slots"] = json!([i, j]),
    }
    rec
}

fn cmd_verify(cfg: &CliConfig, f: &DetFunctional, out: &mut Output<'_>) -> Result<i32, CliError> {
    let classification = f.classification(cfg.field);
    let trials = cfg.trials as usize;
    let reports: Vec<ResidualReport> = Property::ALL
        .iter()
        .map(|&p| verify(f, p, cfg.field, trials, cfg.seed))
        .collect::<Result<_, _>>()?;
    let matches = reports.iter().all(|r| match classification.expected(r.property) {
        Some(expected) => expected == r.passed(),
        None => true,
    });

    if !out.machine {
        out.line(format!("functional = {f}"));
        out.line(format!("field = {}", cfg.field));
        out.line(format!("seed = {}", cfg.seed));
        out.line(format!("trials = {trials}"));
    }
    for r in &reports {
        let expected = classification.expected(r.property);
        if out.machine {
            out.record(json!({
                "command": "verify",
                "field": cfg.field.to_string(),
                "functional": f.to_string(),
                "property": r.property.to_string(),
                "observed": verdict(r.passed()).to_lowercase(),
                "expected": expectation(expected),
                "trials": r.trials_run,
                "seed": r.seed,
                "witness": r.witness.as_ref().map(witness_json),
            }));
        } else {
            out.line(format!(
                "{}: {} (expected {}, {} trials)",
                r.property,
                verdict(r.passed()),
                expectation(expected),
                r.trials_run
            ));
            if let Some(w) = &r.witness {
                out.line(format!("  witness: {w}"));
            }
        }
    }
    if out.machine {
        out.record(json!({
            "command": "verify",
            "field": cfg.field.to_string(),
            "functional": f.to_string(),
            "matches_classification": matches,
        }));
    } else {
        out.line(if matches {
            "result: matches classification"
        } else {
            "result: UNEXPECTED behaviour"
        });
    }
    Ok(if matches { EXIT_OK } else { EXIT_VIOLATION })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], input: &str) -> (i32, String, String) {
        let mut stdin = input.as_bytes();
        let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
        let mut argv = vec!["detlab"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut stdin, &mut stdout, &mut stderr);
        (
            code,
            String::from_utf8(stdout).unwrap(),
            String::from_utf8(stderr).unwrap(),
        )
    }

    #[test]
    fn det_from_stdin() {
        let (code, out, _) = run_str(&["det"], "2 3\n4 5\n");
        assert_eq!(code, 0);
        assert_eq!(out, "det = -2\nalgorithm = crosscheck\n");
    }

    #[test]
    fn det_gf7() {
        let (code, out, _) = run_str(&["det", "--field", "gf:7", "-"], "2 3\n4 1\n");
        assert_eq!(code, 0);
        assert!(out.starts_with("det = 4\n"));
    }

    #[test]
    fn elimination_reports_trace() {
        let (code, out, _) = run_str(&["--algorithm", "elimination", "det"], "0 1\n1 0\n");
        assert_eq!(code, 0);
        assert_eq!(out, "det = -1\nalgorithm = elimination\nswaps = 1\ndiagonal = 1 1\n");
    }

    #[test]
    fn flag_errors_exit_2() {
        assert_eq!(run_str(&["det", "--field", "gf:8"], "1\n").0, 2);
        assert_eq!(run_str(&["det", "--trials", "0"], "1\n").0, 2);
        assert_eq!(run_str(&["frobnicate"], "").0, 2);
        assert_eq!(run_str(&["det", "/nonexistent/matrix.txt"], "").0, 2);
    }

    #[test]
    fn machine_det() {
        let (code, out, _) = run_str(&["det", "--machine"], "1 0\n0 1\n");
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["det"], "1");
        assert_eq!(v["field"], "rational");
    }

    #[test]
    fn verify_unclassified_lift_exits_zero() {
        let (code, out, _) = run_str(&["verify", "lifted:xminusy", "--trials", "50"], "");
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("unclassified"));
    }
}
