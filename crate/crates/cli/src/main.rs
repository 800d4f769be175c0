mod problem;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hodgeci_core::artinian::DEFAULT_MAX_DIM;
use hodgeci_core::ErrorKind;

use crate::report::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "hodgeci",
    version,
    about = "Exact periods, cycle classes and Hodge loci of complete-intersection cycles"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest graded slice (number of monomials) the engine may materialize.
    #[arg(long, default_value_t = DEFAULT_MAX_DIM, global = true)]
    pub max_dim: usize,
    /// Also verify that each f-list is a complete intersection.
    #[arg(long, global = true)]
    pub ci_check: bool,
    /// Emit tangent space bases.
    #[arg(long, global = true)]
    pub basis: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that cycles decompose F and report their degrees.
    Validate {
        file: PathBuf,
        /// Cycles to check (default: every cycle).
        cycles: Vec<String>,
    },
    /// Cycle classes as theta multiples plus primitive parts.
    Class { file: PathBuf, cycles: Vec<String> },
    /// Period of the residue form of a polynomial over a cycle.
    Period {
        file: PathBuf,
        /// Cycle name (default: the `period` queries of the file).
        cycle: Option<String>,
        /// Polynomial of degree (d-2)(n/2+1).
        poly: Option<String>,
    },
    /// Intersection numbers.
    Intersect {
        file: PathBuf,
        /// Two cycle names (default: the file's queries, else every pair).
        cycles: Vec<String>,
    },
    /// Tangent space of the Hodge locus of one cycle, or the meet for two.
    Tangent { file: PathBuf, cycles: Vec<String> },
    /// Compare (I:R1)_e meet (I:R2)_e with (I:R1+R2)_e.
    ColonEq {
        file: PathBuf,
        /// Polynomial or cycle name.
        r1: String,
        /// Polynomial or cycle name.
        r2: String,
        /// Degree e (default: d).
        #[arg(long)]
        degree: Option<u32>,
        /// Generators of I separated by `;` (default: the Jacobian ideal of F).
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Tangent space comparison for two linear cycles on the Fermat variety.
    FermatVerdict {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        b: i64,
        /// Exponents of the second cycle, comma separated.
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<u32>>,
    },
    /// Hilbert function of the Jacobian ring up to one past the socle degree.
    Hilbert {
        /// Problem file (default: the Fermat variety given by --n and --d).
        file: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
    },
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Parse => 1,
        ErrorKind::Precondition => 2,
        ErrorKind::Resource => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match report::run(&cli.command, &cli.global) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let code = match &failure {
                Failure::Problem(e) => {
                    eprintln!("parse error at {e}");
                    1
                }
                Failure::Engine(e) => {
                    eprintln!("error: {e}");
                    exit_code(e.kind())
                }
                Failure::Cycle(name, e) => {
                    eprintln!("error: cycle `{name}`: {e}");
                    exit_code(e.kind())
                }
                Failure::Usage(msg) => {
                    eprintln!("error: {msg}");
                    2
                }
            };
            ExitCode::from(code)
        }
    }
}
