//! `ck`: build external planes of quaternion algebras and verify the
//! Clifford parallelisms they induce.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ck_core::qalg::AlgebraConfig;
use ck_core::verify::{
    describe_algebra, plane_report, run_mutate, run_verify, PlaneChoice, SuiteSelection,
    VerifyOptions,
};
use ck_core::Error;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

const EXIT_CONFIG: u8 = 2;
const EXIT_ALGEBRA: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "ck",
    version,
    about = "Clifford parallelisms and external planes of the Klein quadric"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra config and print its summary.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Print the external plane C or its polar plane.
    Plane {
        config: PathBuf,
        #[arg(long, default_value = "C")]
        which: String,
    },
    /// Run a verification suite.
    Verify {
        config: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Scalar size bound (default 10 over Q, 2 over function fields).
        #[arg(long)]
        bound: Option<u32>,
        /// Report wall_time_ms as 0 so that reports are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
    /// Replace C by a plane through a quadric point and report what breaks.
    Mutate {
        config: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Subcommand)]
enum AlgebraAction {
    New { config: PathBuf },
}

/// A failed command: exit code plus the JSON printed on stdout.
struct Failure {
    code: u8,
    body: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Config(_) | Error::Scalar(_) => EXIT_CONFIG,
            Error::NotDivisionAlgebra { .. }
            | Error::CharMismatch(_)
            | Error::BadStructureConstants(_)
            | Error::Uncertifiable { .. }
            | Error::ZeroDivisor { .. }
            | Error::KernelDimensionUnexpected(_) => EXIT_ALGEBRA,
            _ => EXIT_VERIFY,
        };
        let mut body = json!({ "error": e.to_string() });
        if let Error::NotDivisionAlgebra { witness } | Error::ZeroDivisor { witness } = &e {
            body["witness"] = Value::String(witness.clone());
        }
        Failure { code, body }
    }
}

fn config_error(msg: String) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        body: json!({ "error": msg }),
    }
}

fn load(path: &Path) -> Result<AlgebraConfig, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
    Ok(AlgebraConfig::from_json(&text)?)
}

fn workers() -> Result<Option<usize>, Failure> {
    match std::env::var("CK_WORKERS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| {
                config_error(format!("CK_WORKERS must be a positive integer, got {v:?}"))
            }),
        Err(_) => Ok(None),
    }
}

fn print(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("JSON values serialize")
    );
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Algebra {
            action: AlgebraAction::New { config },
        } => {
            let summary = describe_algebra(&load(&config)?)?;
            eprintln!(
                "algebra {} over {}: certificate {}",
                summary["case"].as_str().unwrap_or("?"),
                summary["field"].as_str().unwrap_or("?"),
                summary["certificate"].as_str().unwrap_or("?"),
            );
            print(&summary);
            Ok(0)
        }
        Command::Plane { config, which } => {
            let choice: PlaneChoice = which.parse()?;
            let out = plane_report(&load(&config)?, choice)?;
            eprintln!(
                "plane {which}: certificate {}",
                out["certificate"].as_str().unwrap_or("?")
            );
            print(&out);
            Ok(0)
        }
        Command::Verify {
            config,
            suite,
            seed,
            trials,
            bound,
            no_timing,
        } => {
            let selection: SuiteSelection = suite.parse()?;
            let cfg = load(&config)?;
            let opts = VerifyOptions {
                seed,
                trials,
                bound,
                workers: workers()?,
                timing: !no_timing,
            };
            let report = run_verify(&cfg, selection, &opts)?;
            for s in &report.suites {
                eprintln!("  {:<24} {}/{}", s.suite, s.passed, s.trials);
            }
            eprintln!(
                "verify {}: {}/{} passed in {} ms",
                report.suite, report.passed, report.trials, report.wall_time_ms
            );
            print(&serde_json::to_value(&report).expect("report serializes"));
            Ok(if report.all_passed() { 0 } else { EXIT_VERIFY })
        }
        Command::Mutate {
            config,
            seed,
            trials,
            bound,
            no_timing,
        } => {
            let cfg = load(&config)?;
            let opts = VerifyOptions {
                seed,
                trials,
                bound,
                workers: workers()?,
                timing: !no_timing,
            };
            let report = run_mutate(&cfg, &opts)?;
            for b in &report.breakage {
                eprintln!(
                    "  {:<24} {}/{}{}",
                    b.suite,
                    b.passed,
                    b.trials,
                    if b.broken { "  broken" } else { "" }
                );
            }
            eprintln!(
                "mutate: {} suite(s) broken, control {}",
                report.broken_suites.len(),
                if report.control_passed {
                    "passed"
                } else {
                    "FAILED"
                }
            );
            print(&serde_json::to_value(&report).expect("report serializes"));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.body["error"].as_str().unwrap_or("unknown"));
            print(&f.body);
            ExitCode::from(f.code)
        }
    }
}
