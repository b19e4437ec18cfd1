//! Command-line interface.
//!
//! Exit codes: 0 when every check passes, 1 on a verification failure, 2 on
//! an input error and 3 when a `beta` is not a stratum label.

use crate::data::*;
use crate::enumerate::{enumerate, EnumerateOptions};
use crate::model::{parse_rat_vector, InputError};
use crate::report::*;
use crate::verify::{verify_text, Context, VerifyReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gitstrat_core::exact::RatVec;
use gitstrat_core::rep::RepSpec;
use serde::Serialize;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNKNOWN_BETA: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gitstrat", version, about = "Exact GIT stratification of representations of products of GL_n")]
pub struct Cli {
    /// Representation config (JSON); defaults to (GL_5 x GL_4, wedge^2 Aff^5 (x) Aff^4).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Table of `beta` values with external indices; defaults to the shipped
    /// table for the default representation.
    #[arg(long, global = true)]
    pub betas: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate the chamber-normalized min-norm points.
    Enumerate {
        /// Worker threads.
        #[arg(long, env = "GITSTRAT_THREADS")]
        threads: Option<usize>,
        /// Checkpoint file, rewritten after every level and resumed from if present.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Per-level progress on stderr.
        #[arg(long)]
        progress: bool,
    },
    /// Report lambda, Z, W, blocks and chi of one stratum.
    Stratum(BetaArg),
    /// Verify data files (certificates, recipes, schedules, fixtures, strata, betas, errata).
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Candidates for the stratification of (M_beta, Z_beta) by two routes.
    Substrata {
        #[command(flatten)]
        beta: BetaArg,
        /// Worker threads when the value set must be enumerated.
        #[arg(long, env = "GITSTRAT_THREADS")]
        threads: Option<usize>,
    },
    /// Print the built-in stabilizer fixtures as a data file.
    Fixtures,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct BetaArg {
    /// `r1,r2,...` or `(p/q)(a1,a2,...)`.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// External index from the `beta` table.
    #[arg(long)]
    pub index: Option<usize>,
}

/// Error with an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure { code: EXIT_INPUT, message: e.to_string() }
    }
}

fn unknown_beta(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_UNKNOWN_BETA, message: msg.into() }
}

struct Env {
    rep: RepSpec,
    /// External index table, when one applies.
    betas: Vec<(usize, RatVec)>,
    shipped: bool,
}

fn load_env(cli: &Cli) -> Result<Env, Failure> {
    let (rep, shipped) = match &cli.config {
        Some(p) => {
            let rep = parse_config(&read_text(p)?, &p.display().to_string())?;
            let shipped = rep == flagship();
            (rep, shipped)
        }
        None => (flagship(), true),
    };
    let betas = match &cli.betas {
        Some(p) => load_betas(&read_text(p)?, &p.display().to_string())?,
        None if shipped => shipped_betas(),
        None => Vec::new(),
    };
    Ok(Env { rep, betas, shipped })
}

fn emit(cli: &Cli, json: &impl Serialize, csv: impl FnOnce() -> Result<String, csv::Error>) -> Result<(), Failure> {
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(json).expect("serializable") + "\n",
        Format::Csv => csv().map_err(|e| Failure { code: EXIT_INPUT, message: e.to_string() })?,
    };
    match &cli.output {
        Some(p) => std::fs::write(p, text).map_err(InputError::from)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn resolve_beta(env: &Env, arg: &BetaArg) -> Result<(RatVec, Option<usize>), Failure> {
    let index_of = |b: &RatVec| env.betas.iter().find(|(_, v)| v == b).map(|(i, _)| *i);
    match (&arg.beta, arg.index) {
        (Some(s), _) => {
            let b = parse_rat_vector(s).map_err(|e| unknown_beta(format!("malformed beta: {e}")))?;
            let i = index_of(&b);
            Ok((b, i))
        }
        (None, Some(i)) => {
            let b = env.betas.iter().find(|(j, _)| *j == i).map(|(_, b)| b.clone());
            b.map(|b| (b, Some(i))).ok_or_else(|| unknown_beta(format!("no beta with index {i}")))
        }
        (None, None) => Err(Failure { code: EXIT_INPUT, message: "either --beta or --index is required".into() }),
    }
}

fn verify_csv(reports: &[VerifyReport]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["kind", "id", "status", "detail"])?;
    for r in reports {
        for row in &r.rows {
            let status = serde_json::to_value(row.status).expect("serializable");
            w.write_record([&r.kind, &row.id, status.as_str().unwrap_or_default(), &row.detail.to_string()])?;
        }
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf-8"))
}

/// Runs a parsed command and returns its exit code.
pub fn run(cli: &Cli) -> Result<i32, Failure> {
    let env = load_env(cli)?;
    match &cli.command {
        Command::Enumerate { threads, checkpoint, progress } => {
            let opts = EnumerateOptions { threads: *threads, checkpoint: checkpoint.clone(), progress: *progress };
            let e = enumerate(&env.rep, &opts)?;
            let report = EnumerationReport::new(&e.records, &beta_index_map(&env.betas));
            eprintln!("count: {}", report.count);
            emit(cli, &report, || report.to_csv())?;
            Ok(EXIT_OK)
        }
        Command::Stratum(arg) => {
            let (b, index) = resolve_beta(&env, arg)?;
            let s = stratum_checked(&env.rep, &env.rep.weights(), &b).map_err(|e| unknown_beta(e.to_string()))?;
            let report = StratumReport::new(&env.rep, &s, index);
            emit(cli, &report, || report.to_csv())?;
            Ok(EXIT_OK)
        }
        Command::Verify { files } => {
            let ctx = Context::new(env.rep.clone(), &env.betas);
            let mut reports = Vec::new();
            for f in files {
                reports.push(verify_text(&ctx, &read_text(f)?, &f.display().to_string())?);
            }
            for r in &reports {
                eprintln!("{}: {} passed, {} failed, {} skipped", r.kind, r.passed, r.failed, r.skipped);
            }
            emit(cli, &reports, || verify_csv(&reports))?;
            Ok(if reports.iter().all(VerifyReport::all_passed) { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Substrata { beta, threads } => {
            let (b, index) = resolve_beta(&env, beta)?;
            let weights = env.rep.weights();
            let s = stratum_checked(&env.rep, &weights, &b).map_err(|e| unknown_beta(e.to_string()))?;
            let frak_b: Vec<RatVec> = if env.shipped || cli.betas.is_some() {
                env.betas.iter().map(|(_, b)| b.clone()).collect()
            } else {
                let opts = EnumerateOptions { threads: *threads, ..Default::default() };
                enumerate(&env.rep, &opts)?.records.into_iter().map(|r| r.beta).collect()
            };
            let report = substrata_report(&env.rep, &weights, &s, &frak_b, index);
            emit(cli, &report, || {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["route", "beta_prime"])?;
                for (route, list) in [("scan", &report.scan), ("direct", &report.direct)] {
                    for v in list {
                        let s: Vec<String> = v.iter().map(|r| format!("{}/{}", r.num, r.den)).collect();
                        w.write_record([route, &s.join(" ")])?;
                    }
                }
                Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf-8"))
            })?;
            Ok(if report.agreement { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Fixtures => {
            let file = builtin_fixture_file();
            emit(cli, &file, || Err(csv::Error::from(std::io::Error::other("fixtures are only available as JSON"))))?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses the process arguments, runs and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
