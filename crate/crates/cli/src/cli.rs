//! Argument parsing and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pairbias_core::census::{CensusJob, CensusScope};
use pairbias_core::constants::{bias_bounds_with, EulerProduct, RTable};
use pairbias_core::primes::SieveConfig;

use crate::report::{census_csv, census_json, predict_csv, BiasReportJson};
use crate::runner::run_census_job;
use crate::tables::write_all_tables;
use crate::verify::{self, VerifyOptions};
use crate::{write_artifact, CliError};

#[derive(Parser, Debug)]
#[command(
    name = "pairbias",
    version,
    about = "Exact sign censuses and certified density bounds for prime pairs p, p+k",
    arg_required_else_help = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact sign census of T(p) and S(p) over prime pairs in a scope
    Census(CensusArgs),
    /// Per-k report: C_k, Q, L, R, R' and the certified lower bounds
    Constants(ConstantsArgs),
    /// Reproduce the five reference tables as CSV files
    Tables(TablesArgs),
    /// Run the acceptance checks; nonzero exit on any failure
    Verify(VerifyArgs),
    /// Empirical pair counts next to the first-order prediction
    Predict(PredictArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    /// Even k values: comma list with ranges, e.g. "2,4,6" or "2..120:2"
    #[arg(long, value_name = "LIST")]
    pub k: String,
    /// Scope: p ranges over the first N primes (p+k tested independently)
    #[arg(long, value_name = "N", conflicts_with = "up_to")]
    pub first_primes: Option<u64>,
    /// Scope: pairs with p <= X
    #[arg(long, value_name = "X")]
    pub up_to: Option<u64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output file; stdout when omitted
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads for window-parallel tallying
    #[arg(long, value_name = "T", default_value_t = default_threads())]
    pub threads: usize,
}

#[derive(Args, Debug)]
pub struct ConstantsArgs {
    /// Even k values: comma list with ranges
    #[arg(long, value_name = "LIST")]
    pub k: String,
    /// Truncation point of the R series
    #[arg(long = "cutoff-r", value_name = "Z", default_value_t = pairbias_core::constants::DEFAULT_R_CUTOFF)]
    pub cutoff_r: u64,
    /// Truncation point of the Euler product behind C_k
    #[arg(long = "cutoff-euler", value_name = "Z", default_value_t = pairbias_core::constants::DEFAULT_EULER_CUTOFF)]
    pub cutoff_euler: u64,
    /// Only JSON is supported for constants reports
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    /// Output directory for table1.csv .. table5.csv
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
    /// Number of primes for the census table at desk scale
    #[arg(
        long,
        value_name = "N",
        default_value_t = 100_000,
        conflicts_with = "full"
    )]
    pub scale: u64,
    /// Full scale: census over the first 20 million primes
    #[arg(long)]
    pub full: bool,
    #[arg(long = "cutoff-r", value_name = "Z", default_value_t = pairbias_core::constants::DEFAULT_R_CUTOFF)]
    pub cutoff_r: u64,
    #[arg(long = "cutoff-euler", value_name = "Z", default_value_t = pairbias_core::constants::DEFAULT_EULER_CUTOFF)]
    pub cutoff_euler: u64,
    #[arg(long, value_name = "T", default_value_t = default_threads())]
    pub threads: usize,
    /// Only CSV is supported for tables
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Also run the full-scale census regression (first 20 million primes)
    #[arg(long)]
    pub full: bool,
    #[arg(long, value_name = "T", default_value_t = default_threads())]
    pub threads: usize,
}

#[derive(Args, Debug)]
pub struct PredictArgs {
    /// Even k values: comma list with ranges
    #[arg(long, value_name = "LIST")]
    pub k: String,
    /// Compare at scope p <= X
    #[arg(long, value_name = "X")]
    pub up_to: u64,
    #[arg(long = "cutoff-euler", value_name = "Z", default_value_t = pairbias_core::constants::DEFAULT_EULER_CUTOFF)]
    pub cutoff_euler: u64,
    /// Only CSV is supported for predictions
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_name = "T", default_value_t = default_threads())]
    pub threads: usize,
}

pub fn default_threads() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get().min(8))
        .unwrap_or(1)
}

/// Parse a k list: comma-separated items, each an even integer or an
/// inclusive range `a..b` with optional `:step` (step defaults to 2).
pub fn parse_k_list(s: &str) -> Result<Vec<u64>, CliError> {
    let mut out: Vec<u64> = Vec::new();
    let mut push = |k: u64| -> Result<(), CliError> {
        if k < 2 || k % 2 != 0 {
            return Err(CliError::Usage(format!(
                "k must be a positive even integer, got {k}"
            )));
        }
        if !out.contains(&k) {
            out.push(k);
        }
        Ok(())
    };
    for item in s.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return Err(CliError::Usage("empty item in k list".into()));
        }
        if let Some((range, step)) = split_range(item)? {
            let (a, b) = range;
            if a > b {
                return Err(CliError::Usage(format!("empty range {a}..{b}")));
            }
            if step == 0 || step % 2 != 0 {
                return Err(CliError::Usage(format!(
                    "range step must be a positive even integer, got {step}"
                )));
            }
            let mut k = a;
            while k <= b {
                push(k)?;
                k += step;
            }
        } else {
            push(parse_u64(item)?)?;
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("k list is empty".into()));
    }
    Ok(out)
}

type RangeSpec = ((u64, u64), u64);

fn split_range(item: &str) -> Result<Option<RangeSpec>, CliError> {
    let Some((a, rest)) = item.split_once("..") else {
        return Ok(None);
    };
    let (b, step) = match rest.split_once(':') {
        Some((b, step)) => (b, parse_u64(step)?),
        None => (rest, 2),
    };
    Ok(Some(((parse_u64(a)?, parse_u64(b)?), step)))
}

fn parse_u64(s: &str) -> Result<u64, CliError> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| CliError::Usage(format!("not an integer: {s:?}")))
}

fn scope_from(first_primes: Option<u64>, up_to: Option<u64>) -> Result<CensusScope, CliError> {
    match (first_primes, up_to) {
        (Some(n), None) => Ok(CensusScope::FirstNPrimes(n)),
        (None, Some(x)) => Ok(CensusScope::UpToX(x)),
        _ => Err(CliError::Usage(
            "exactly one of --first-primes or --up-to is required".into(),
        )),
    }
}

fn check_threads(t: usize) -> Result<usize, CliError> {
    if t == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    Ok(t)
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Census(args) => run_census(args),
        Command::Constants(args) => run_constants(args),
        Command::Tables(args) => run_tables(args),
        Command::Verify(args) => run_verify(args),
        Command::Predict(args) => run_predict(args),
    }
}

fn run_census(args: CensusArgs) -> Result<(), CliError> {
    let ks = parse_k_list(&args.k)?;
    let scope = scope_from(args.first_primes, args.up_to)?;
    let threads = check_threads(args.threads)?;
    let job = CensusJob::new(&ks, scope, SieveConfig::default())?;
    let results = run_census_job(&job, threads, false)?;
    let content = match args.format {
        OutputFormat::Csv => census_csv(&results),
        OutputFormat::Json => census_json(&results)?,
    };
    write_artifact(args.out.as_deref(), &content)
}

fn run_constants(args: ConstantsArgs) -> Result<(), CliError> {
    if args.format != OutputFormat::Json {
        return Err(CliError::Usage(
            "constants reports are JSON; use --format json".into(),
        ));
    }
    let ks = parse_k_list(&args.k)?;
    let rt = RTable::build(args.cutoff_r)?;
    let euler = EulerProduct::compute(args.cutoff_euler)?;
    let mut reports = Vec::with_capacity(ks.len());
    for &k in &ks {
        reports.push(BiasReportJson::from_report(&bias_bounds_with(
            &rt, &euler, k,
        )?));
    }
    let mut content = serde_json::to_string_pretty(&reports)
        .map_err(|e| CliError::Usage(format!("json encoding failed: {e}")))?;
    content.push('\n');
    write_artifact(args.out.as_deref(), &content)
}

fn run_tables(args: TablesArgs) -> Result<(), CliError> {
    if args.format != OutputFormat::Csv {
        return Err(CliError::Usage("tables are CSV; use --format csv".into()));
    }
    let threads = check_threads(args.threads)?;
    let n_primes = if args.full { 20_000_000 } else { args.scale };
    write_all_tables(
        &args.out,
        n_primes,
        args.cutoff_r,
        args.cutoff_euler,
        threads,
        args.full,
    )
}

fn run_verify(args: VerifyArgs) -> Result<(), CliError> {
    let threads = check_threads(args.threads)?;
    let outcomes = verify::run_all(&VerifyOptions {
        full: args.full,
        threads,
    });
    let mut failed = 0usize;
    for o in &outcomes {
        println!("{}", o.render());
        if !o.passed {
            failed += 1;
        }
    }
    println!(
        "verification: {}/{} criteria passed",
        outcomes.len() - failed,
        outcomes.len()
    );
    if failed > 0 {
        return Err(CliError::Verification(format!(
            "{failed} criterion(s) failed"
        )));
    }
    Ok(())
}

fn run_predict(args: PredictArgs) -> Result<(), CliError> {
    if args.format != OutputFormat::Csv {
        return Err(CliError::Usage(
            "predictions are CSV; use --format csv".into(),
        ));
    }
    let ks = parse_k_list(&args.k)?;
    let threads = check_threads(args.threads)?;
    let job = CensusJob::new(&ks, CensusScope::UpToX(args.up_to), SieveConfig::default())?;
    let results = run_census_job(&job, threads, false)?;
    let euler = EulerProduct::compute(args.cutoff_euler)?;
    let content = predict_csv(&results, args.up_to, &euler)?;
    write_artifact(args.out.as_deref(), &content)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_list_forms() {
        assert_eq!(parse_k_list("2").unwrap(), vec![2]);
        assert_eq!(parse_k_list("2,4,6").unwrap(), vec![2, 4, 6]);
        assert_eq!(parse_k_list("2..12:2").unwrap(), vec![2, 4, 6, 8, 10, 12]);
        assert_eq!(parse_k_list("2..12:4").unwrap(), vec![2, 6, 10]);
        assert_eq!(parse_k_list("2..6").unwrap(), vec![2, 4, 6]);
        assert_eq!(parse_k_list("2,2,4").unwrap(), vec![2, 4]);
        assert!(parse_k_list("3").is_err());
        assert!(parse_k_list("0").is_err());
        assert!(parse_k_list("2..9:3").is_err());
        assert!(parse_k_list("").is_err());
        assert!(parse_k_list("2,,4").is_err());
        assert!(parse_k_list("banana").is_err());
    }
}
