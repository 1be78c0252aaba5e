// SPDX-License-Identifier: Apache-2.0

//! Command-line front end. [`run`] takes the argument list and output streams
//! and returns the process exit code, so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 usage, 2 format, 3 capacity or consistency,
//! 4 size guard.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::bench::{render_csv, run_suite_trials};
use crate::codec::{embed, extract, phi, sigma, Minimizer, StegoCode, EXHAUSTIVE_K_CAP};
use crate::error::StegoError;
use crate::lcdm::{make_lcdm, DistortionMap};
use crate::matrix_baseline::{format_bytes, memory_footprint, Units};
use crate::oracle::{run_trials, verify_dffa, OracleReport};
use crate::stego_io::{self, IoError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_FORMAT: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;
pub const EXIT_GUARD: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "polystego", version, about = "Polynomial syndrome coding for LSB steganography")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hide a message in a PGM cover.
    Embed(EmbedArgs),
    /// Recover a message from a PGM stego image.
    Extract(ExtractArgs),
    /// Check the family search against exhaustive search on random instances.
    Oracle(OracleArgs),
    /// Measure comparison counts and storage over a range of cover sizes.
    Bench(BenchArgs),
    /// Print parity-matrix and generator storage for one code size.
    Footprint(FootprintArgs),
}

#[derive(Debug, Args)]
#[group(id = "generator", required = true, multiple = false, args = ["gen", "lcdm"])]
pub struct GeneratorChoice {
    /// Generator polynomial as an ascending exponent list.
    #[arg(long, value_name = "PATH")]
    pub gen: Option<PathBuf>,
    /// Use the generator 1 + x^(message length).
    #[arg(long)]
    pub lcdm: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    /// Family search for LCDM generators, exhaustive search otherwise.
    Auto,
    Dffa,
    Exhaustive,
    /// Best of the first --budget modifiers.
    Budgeted,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[arg(long, value_name = "PATH")]
    pub cover: PathBuf,
    #[arg(long, value_name = "PATH")]
    pub message: PathBuf,
    #[arg(long, value_name = "PATH")]
    pub costs: PathBuf,
    #[command(flatten)]
    pub generator: GeneratorChoice,
    #[arg(long, value_enum, default_value_t = Strategy::Auto)]
    pub strategy: Strategy,
    /// Modifiers scored by the budgeted strategy.
    #[arg(long, default_value_t = 1 << 16)]
    pub budget: u64,
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[arg(long, value_name = "PATH")]
    pub stego: PathBuf,
    #[command(flatten)]
    pub generator: GeneratorChoice,
    /// Message length; required with --lcdm, checked against the generator otherwise.
    #[arg(long, value_name = "N")]
    pub msg_len: Option<usize>,
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_name = "N", required_unless_present = "fixture")]
    pub n: Option<usize>,
    #[arg(long, value_name = "K", required_unless_present = "fixture")]
    pub msg_len: Option<usize>,
    #[arg(long, default_value_t = 10)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Check the 11-pixel worked example instead of random instances.
    #[arg(long)]
    pub fixture: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated cover sizes.
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    pub sizes: Vec<usize>,
    /// Message length as a fraction of the cover length.
    #[arg(long, value_name = "R")]
    pub msg_rate: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Measurements per size.
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    /// Leave the wall-time column empty for reproducible output.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct FootprintArgs {
    #[arg(long, value_name = "N")]
    pub n: u64,
    #[arg(long, value_name = "K")]
    pub msg_len: u64,
    /// Report KiB/MiB/GiB instead of KB/MB/GB.
    #[arg(long)]
    pub binary: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] IoError),
    #[error(transparent)]
    Stego(#[from] StegoError),
    #[error("{0}")]
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Format(IoError::CostCount { .. }) => EXIT_CAPACITY,
            CliError::Format(_) => EXIT_FORMAT,
            CliError::Consistency(_) => EXIT_CAPACITY,
            CliError::Stego(e) => match e {
                StegoError::EnumerationCap { .. }
                | StegoError::OracleCap { .. }
                | StegoError::MatrixCap { .. } => EXIT_GUARD,
                StegoError::InvalidRate(_) | StegoError::EmptySizes => EXIT_USAGE,
                _ => EXIT_CAPACITY,
            },
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    EXIT_OK
                }
                _ => EXIT_USAGE,
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<u8, CliError> {
    match command {
        Command::Embed(a) => cmd_embed(a, out),
        Command::Extract(a) => cmd_extract(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Bench(a) => cmd_bench(a, out),
        Command::Footprint(a) => cmd_footprint(a, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Usage(format!("cannot write output: {e}")))
}

fn build_code(n: usize, gen: &GeneratorChoice, msg_len: Option<usize>) -> Result<StegoCode, CliError> {
    match (&gen.gen, msg_len) {
        (Some(path), len) => {
            let g = stego_io::read_gen(path)?;
            let code = StegoCode::new(n, g)?;
            if let Some(len) = len.filter(|&l| l != code.msg_len()) {
                return Err(CliError::Consistency(format!(
                    "--msg-len {len} disagrees with generator degree {}",
                    code.msg_len()
                )));
            }
            Ok(code)
        }
        (None, Some(len)) => Ok(make_lcdm(n, len)?),
        (None, None) => Err(CliError::Usage("--lcdm needs --msg-len".into())),
    }
}

pub fn cmd_embed(a: EmbedArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let cover = stego_io::read_pgm(&a.cover)?;
    let message = stego_io::read_message(&a.message)?;
    let costs = stego_io::read_costs(&a.costs, cover.len())?;
    let code = build_code(cover.len(), &a.generator, Some(message.len()).filter(|_| a.generator.lcdm))?;
    let minimizer = pick_minimizer(&code, a.strategy, a.budget, &costs)?;
    let result = embed(&code, &cover, &message, minimizer)?;
    stego_io::write_pgm(&a.out, &result.stego)?;
    emit(
        out,
        &format!("cost={}\ncomparisons={}\n", result.cost, result.comparisons),
    )?;
    Ok(EXIT_OK)
}

fn pick_minimizer<'a>(
    code: &StegoCode,
    strategy: Strategy,
    budget: u64,
    costs: &'a DistortionMap,
) -> Result<Minimizer<'a>, CliError> {
    Ok(match strategy {
        Strategy::Budgeted => Minimizer::Budgeted(costs, budget),
        Strategy::Dffa => Minimizer::Dffa(costs),
        Strategy::Exhaustive => Minimizer::Exhaustive(costs),
        Strategy::Auto if code.is_lcdm() => Minimizer::Dffa(costs),
        Strategy::Auto if code.k() <= EXHAUSTIVE_K_CAP => Minimizer::Exhaustive(costs),
        Strategy::Auto => {
            return Err(CliError::Consistency(format!(
                "generator {} is not 1 + x^{} and k = {} is too large for exhaustive search; \
                 use --strategy budgeted",
                code.generator(),
                code.msg_len(),
                code.k()
            )))
        }
    })
}

pub fn cmd_extract(a: ExtractArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let stego = stego_io::read_pgm(&a.stego)?;
    let code = build_code(stego.len(), &a.generator, a.msg_len)?;
    let message = extract(&code, &stego)?;
    stego_io::write_message(&a.out, &message)?;
    emit(out, &format!("bits={}\n", message.len()))?;
    Ok(EXIT_OK)
}

fn summary_line(r: &OracleReport) -> String {
    let seed = r.seed.map_or_else(|| "none".into(), |s| s.to_string());
    format!(
        "seed={seed} modifier_count={} best_cost={} dffa_cost={} gap={}\n",
        r.modifier_count, r.best_cost, r.dffa_cost, r.gap
    )
}

pub fn cmd_oracle(a: OracleArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let reports = if a.fixture {
        let inst = crate::worked_example::instance();
        let cover_poly = sigma(&phi(&inst.cover));
        vec![verify_dffa(
            &inst.code,
            &cover_poly,
            &inst.message.to_poly(),
            &inst.costs,
        )?]
    } else {
        let (n, msg_len) = (a.n.unwrap_or(0), a.msg_len.unwrap_or(0));
        run_trials(n, msg_len, a.trials, a.seed)?
    };
    if a.fixture {
        emit(out, &reports[0].render())?;
    } else {
        for r in &reports {
            emit(out, &summary_line(r))?;
        }
    }
    let failures = reports.iter().filter(|r| !r.is_consistent()).count();
    let max_gap = reports.iter().map(|r| r.gap).fold(0.0, f64::max);
    emit(
        out,
        &format!(
            "trials={} failures={failures} max_gap={max_gap}\n",
            reports.len()
        ),
    )?;
    if failures > 0 {
        return Err(CliError::Consistency(format!(
            "{failures} trial(s) disagreed with exhaustive search"
        )));
    }
    Ok(EXIT_OK)
}

pub fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    if a.sizes.is_empty() {
        return Err(CliError::Usage("--sizes must list at least one size".into()));
    }
    if a.sizes.iter().any(|&n| n < 2) {
        return Err(CliError::Usage("every size must be at least 2".into()));
    }
    let records = run_suite_trials(&a.sizes, a.msg_rate, a.seed, a.trials.max(1))?;
    emit(out, &render_csv(&records, !a.no_timing))?;
    Ok(EXIT_OK)
}

pub fn cmd_footprint(a: FootprintArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let f = memory_footprint(a.n, a.msg_len);
    let units = if a.binary { Units::Binary } else { Units::Decimal };
    emit(
        out,
        &format!(
            "matrix_bytes={} ({})\npoly_bytes={} ({})\n",
            f.matrix_bytes,
            format_bytes(f.matrix_bytes, units),
            f.poly_bytes,
            format_bytes(f.poly_bytes, units)
        ),
    )?;
    Ok(EXIT_OK)
}
