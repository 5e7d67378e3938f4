//! `ternforms`: JSON command-line front end to the ternforms library.
//!
//! Results go to stdout as JSON. Errors go to stdout as
//! `{"error": {"kind", "message"}}` with a one-line note on stderr; the exit
//! code is 2 for malformed input and 1 for mathematical failures.

mod commands;
mod io;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use io::{parse_domain, parse_primes, CliError, CliResult};
use suites::SuiteConfig;

#[derive(Parser)]
#[command(name = "ternforms", version, about = "Exact computations with ternary forms and their invariants")]
struct Cli {
    /// JSON file with cached normalization constants.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discriminant of a ternary form.
    Disc {
        #[arg(long)]
        form: PathBuf,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        /// Skip division by the normalization constant.
        #[arg(long)]
        raw: bool,
    },
    /// Primes of bad reduction outside S for an integer form.
    GoodReduction {
        #[arg(long)]
        form: PathBuf,
        #[arg(long, default_value = "")]
        s_set: String,
        #[arg(long)]
        trial_bound: Option<u64>,
    },
    /// Acts by a 3x3 matrix on a form (V_n) or a (2,2)-class (six variables).
    Act {
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        form: PathBuf,
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// The degree 4 and 6 invariants of a ternary cubic.
    CubicInvariants {
        #[arg(long)]
        form: PathBuf,
    },
    /// Equivalence of weighted invariant tuples under scaling.
    TupleEquiv {
        #[arg(long)]
        t1: String,
        #[arg(long)]
        t2: String,
        #[arg(long)]
        weights: String,
        #[arg(long, default_value = "")]
        s_set: String,
    },
    /// Canonical representative of a (2,2)-class.
    Canonicalize {
        #[arg(long)]
        form: PathBuf,
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Sextic covariants of a (2,2)-class.
    Covariants {
        #[arg(long)]
        form: PathBuf,
        /// x, z or both.
        #[arg(long, default_value = "both")]
        which: String,
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Exhaustive tangency scan against covariant vanishing over GF(p).
    BranchCheck {
        #[arg(long)]
        form: PathBuf,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Genericity of an integer (2,2)-class modulo p.
    Generic {
        #[arg(long)]
        form: PathBuf,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Candidate lattice isometries.
    LatticeEnum {
        /// Cross-check against a brute-force search with entries in [-B, B].
        #[arg(long = "box")]
        bound: Option<u32>,
    },
    /// Runs a randomized verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trials: Option<usize>,
        /// ZZ, QQ or GF(p).
        #[arg(long)]
        domain: Option<String>,
        #[arg(long)]
        primes: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

/// The JSON document to print and whether everything checked out.
fn run(cli: Cli) -> CliResult<(Value, bool)> {
    if let Some(path) = &cli.config {
        io::load_config(path)?;
    }
    let ok = |v: Value| Ok((v, true));
    match cli.command {
        Command::Disc { form, modulus, raw } => ok(commands::disc(&form, modulus, raw)?),
        Command::GoodReduction { form, s_set, trial_bound } => ok(commands::good_reduction(&form, &s_set, trial_bound)?),
        Command::Act { gamma, form, modulus } => ok(commands::act(&gamma, &form, modulus)?),
        Command::CubicInvariants { form } => ok(commands::cubic_invariants(&form)?),
        Command::TupleEquiv { t1, t2, weights, s_set } => ok(commands::tuple_equiv(&t1, &t2, &weights, &s_set)?),
        Command::Canonicalize { form, modulus } => ok(commands::canonicalize(&form, modulus)?),
        Command::Covariants { form, which, modulus } => ok(commands::covariants(&form, &which, modulus)?),
        Command::BranchCheck { form, modulus } => ok(commands::branch_check(&form, modulus)?),
        Command::Generic { form, modulus } => ok(commands::generic(&form, modulus)?),
        Command::LatticeEnum { bound } => ok(commands::lattice_enum(bound)?),
        Command::Verify { suite, seed, trials, domain, primes, output, jobs } => {
            let cfg = SuiteConfig {
                suite,
                seed,
                trials,
                domain: domain.as_deref().map(parse_domain).transpose()?,
                primes: primes.as_deref().map(parse_primes).transpose()?.unwrap_or_default(),
                output,
                jobs,
            };
            let report = suites::run_suite_with_jobs(&cfg)?;
            let value = serde_json::to_value(&report).expect("serializable");
            if let Some(path) = &cfg.output {
                let body = serde_json::to_string_pretty(&value).expect("serializable");
                std::fs::write(path, body + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            Ok((value, report.all_pass))
        }
    }
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.to_string().trim_end().to_string());
            eprintln!("{}", e.to_string().trim_end());
            print(&err.to_json());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok((v, all_pass)) => {
            print(&v);
            if all_pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            print(&e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
