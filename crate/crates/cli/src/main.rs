mod commands;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use commands::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "ivpoly",
    version,
    about = "Integer-valued polynomials on subsets of Z"
)]
#[command(args_conflicts_with_subcommands = true, arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Recheck a JSON report written with --json
    #[arg(long, value_name = "FILE")]
    verify: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Subset of Z: Z, ap:a,b, squares, primes, finite:e1,e2,...
    #[arg(short = 's', long = "set", default_value = "Z")]
    pub set: String,

    /// Emit a JSON report
    #[arg(long)]
    pub json: bool,

    /// Bound on the witness search for prime residues
    #[arg(long, value_name = "N")]
    pub search_cap: Option<u64>,

    /// Largest degree the factorizer accepts
    #[arg(long, value_name = "N")]
    pub degree_cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// pi-sequence of length k for a prime
    PiSeq {
        #[arg(long, value_name = "PRIME")]
        pi: u64,
        #[arg(short = 'k', long = "length")]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// d-sequence of length k
    DSeq {
        #[arg(short = 'd', long = "denominator")]
        d: BigInt,
        #[arg(short = 'k', long = "length")]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Whether g/d maps the subset into Z
    Member {
        #[arg(short = 'p', long = "poly")]
        poly: String,
        #[command(flatten)]
        common: Common,
    },
    /// gcd of the numerator's values on the subset
    FixedDivisor {
        #[arg(short = 'p', long = "poly")]
        poly: String,
        #[command(flatten)]
        common: Common,
    },
    /// Whether the values of g/d have no common divisor above 1
    ImagePrimitive {
        #[arg(short = 'p', long = "poly")]
        poly: String,
        #[command(flatten)]
        common: Common,
    },
    /// Irreducibility in Int(S, Z) with a certificate
    Irreducible {
        #[arg(short = 'p', long = "poly")]
        poly: String,
        /// Use the prime-denominator test (d must be prime)
        #[arg(long)]
        prime_d: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Irreducibility by exhaustive search over factor and divisor splits
    Oracle {
        #[arg(short = 'p', long = "poly")]
        poly: String,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(path) = cli.verify {
        return match verify::verify_file(&path) {
            Ok(()) => {
                println!("VERIFIED");
                ExitCode::SUCCESS
            }
            Err(Failure { code, message }) => {
                eprintln!("{message}");
                ExitCode::from(code)
            }
        };
    }
    let command = cli.command.expect("clap requires a subcommand or --verify");
    let json = command.common().json;
    match commands::run(&command) {
        Ok(report) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable report")
                );
            } else {
                print!("{}", commands::render_text(&report));
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            if json {
                let body = serde_json::json!({
                    "command": command.name(),
                    "error": failure.message,
                    "exit_code": failure.code,
                    "version": report::VERSION,
                });
                println!("{}", serde_json::to_string_pretty(&body).unwrap());
            }
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
