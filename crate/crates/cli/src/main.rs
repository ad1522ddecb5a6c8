//! `annfit` command-line harness.
//!
//! Every run writes one JSON report. Exit status is 0 when every check
//! passes, 2 when a check fails, and 1 on configuration, input or
//! computation errors.

mod commands;
mod render;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};

#[derive(Parser, Debug)]
#[command(
    name = "annfit",
    version,
    about = "Annihilator/Fitting verification suites and Stickelberger reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Random cones through the det-class verifier, module property suites
    /// and the C_l x C_l witness.
    Verify(VerifyArgs),
    /// Stickelberger element and its character values.
    Theta(ThetaArgs),
    /// Integrality of w(b^{n+1} - sigma_b)Theta(n+1) and the H^0 annihilator check.
    CsCheck(CsCheckArgs),
    /// The C_l x C_l Fitting duality witness.
    Prop28(Prop28Args),
    /// Homology of a complex file.
    Homology(FileArgs),
    /// Determinant class of a complex file.
    Detclass(FileArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Extra l-adic precision beyond the computed bounds.
    #[arg(long, env = "ANNFIT_GUARD", default_value_t = 8)]
    pub guard: u32,
    /// Report path; the report goes to stdout when absent.
    #[arg(long, env = "ANNFIT_OUT")]
    pub out: Option<PathBuf>,
    /// Record wall-clock time in the report (reports are then no longer
    /// reproducible byte for byte).
    #[arg(long, env = "ANNFIT_TIMING")]
    pub timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, env = "ANNFIT_L", default_value_t = 3)]
    pub l: u64,
    /// Group descriptor such as `C3`, `C2xC2`.
    #[arg(long, env = "ANNFIT_GROUP", default_value = "C3")]
    pub group: String,
    #[arg(long, env = "ANNFIT_TRIALS", default_value_t = 20)]
    pub trials: usize,
    #[arg(long, env = "ANNFIT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Bound on b_0 + b_1 for the cone instances.
    #[arg(long, env = "ANNFIT_MAX_RANK", default_value_t = 3)]
    pub max_rank: usize,
    /// Bound on a in 1 - u = l^a v for the cone twists.
    #[arg(long, env = "ANNFIT_MAX_A", default_value_t = 2)]
    pub max_a: u32,
    /// Bound on log_l of the order of random modules.
    #[arg(long, env = "ANNFIT_MAX_LOG_ORDER", default_value_t = 4)]
    pub max_log_order: u32,
    /// Run only the C_l x C_l witness.
    #[arg(long)]
    pub prop28: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Conductor.
    #[arg(long, env = "ANNFIT_F")]
    pub f: u64,
    /// Generators of the subgroup H of (Z/f)^* fixing the field.
    #[arg(long, value_delimiter = ',')]
    pub h: Vec<u64>,
    /// Use the maximal real subfield.
    #[arg(long, conflicts_with = "h")]
    pub real: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ThetaArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Weight n >= 2.
    #[arg(long, env = "ANNFIT_N")]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct CsCheckArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Theta is taken at n + 1.
    #[arg(long, env = "ANNFIT_N")]
    pub n: u64,
    #[arg(long, env = "ANNFIT_B")]
    pub b: u64,
    #[arg(long, env = "ANNFIT_L")]
    pub l: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Prop28Args {
    #[arg(long, env = "ANNFIT_L", default_value_t = 3)]
    pub l: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct FileArgs {
    /// Complex in canonical JSON.
    pub input: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

/// A finished run: result fields and verdict.
pub struct Outcome {
    pub config: Value,
    pub results: Map<String, Value>,
    pub passed: bool,
}

pub type CliResult<T> = Result<T, String>;

fn emit(command: &str, common: &Common, outcome: Outcome, started: Instant) -> CliResult<()> {
    let mut report = Map::new();
    report.insert("tool".into(), "annfit".into());
    report.insert("version".into(), annfit::VERSION.into());
    report.insert("command".into(), command.into());
    report.insert("config".into(), outcome.config);
    report.extend(outcome.results);
    report.insert("passed".into(), outcome.passed.into());
    if common.timing {
        report.insert("wall_clock_seconds".into(), started.elapsed().as_secs_f64().into());
    }
    let text = annfit::io::to_canonical_string(&Value::Object(report));
    match &common.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            println!("{command}: {}", if outcome.passed { "PASS" } else { "FAIL" });
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<bool> {
    let started = Instant::now();
    let (name, common, outcome) = match cli.command {
        Command::Verify(a) => ("verify", a.common.clone(), suite::verify(&a)?),
        Command::Theta(a) => ("theta", a.common.clone(), commands::theta(&a)?),
        Command::CsCheck(a) => ("cs-check", a.common.clone(), commands::cs_check(&a)?),
        Command::Prop28(a) => ("prop28", a.common.clone(), commands::prop28(&a)?),
        Command::Homology(a) => ("homology", a.common.clone(), commands::homology(&a)?),
        Command::Detclass(a) => ("detclass", a.common.clone(), commands::detclass(&a)?),
    };
    let passed = outcome.passed;
    emit(name, &common, outcome, started)?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
