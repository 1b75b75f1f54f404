//! `synor`: Betti tables, resolutions and theorem checks for monomial ideals.

mod commands;
mod input;
mod properties;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use synor::algebra::Field;

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or invalid input: exit code 1.
    Input(String),
    /// A certification or theorem check failed: exit code 2.
    Verification(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Verification(_) => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "synor", version, about = "LCM lattices, synor complexes and minimal free resolutions of monomial ideals")]
struct Cli {
    /// Coefficient field: `q` for the rationals or a prime p.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    field: Field,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

/// An ideal: a file (`vars:` line, one monomial per line) or an inline
/// comma-separated list like `a*f,b*f,a*b*c`.
#[derive(Args, Clone)]
pub struct IdealArgs {
    pub input: String,
    /// Variable order for an inline list, e.g. `"a b c"` (default: sorted names).
    #[arg(long)]
    pub vars: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Graded Betti table from homology of open intervals.
    Betti(IdealArgs),
    /// Minimal free resolution from the synor complex, with certification.
    Resolve(IdealArgs),
    /// LCM lattice with labels, covers and synors of the proper part.
    Lattice(IdealArgs),
    /// Mechanical theorem checks.
    Verify {
        #[command(subcommand)]
        which: Verify,
        /// Where to write a reproducer when a check fails.
        #[arg(long, global = true, default_value = "synor-reproducer.txt")]
        reproducer: PathBuf,
    },
    /// Expanded shuffle product of two chains, written `top>...>bottom`
    /// using element labels (or ids); an empty string is the empty chain.
    ShuffleDemo {
        /// An ideal, or a lattice JSON file as written by `lattice --format json`.
        lattice: String,
        left: String,
        right: String,
        #[arg(long)]
        vars: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum Verify {
    /// Maximal-shift subadditivity for all i1 <= i2 and k <= i1.
    Subadditivity {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Also require witnesses of degrees exactly t_i1 and t_i2.
        #[arg(long)]
        exact: bool,
    },
    /// Join decomposition of interval homology classes for every element.
    Decomposition(IdealArgs),
    /// Join decomposition on every lattice with at most `max` elements, by
    /// the constructive route and by brute force.
    Lattices {
        #[arg(long, default_value_t = 6)]
        max: usize,
    },
    /// Randomized checks of the synor complex, shuffle boundary formula and
    /// resolution certification.
    Properties {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Largest random poset.
        #[arg(long, default_value_t = 9)]
        max: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: synor::Error| e.to_string())
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("SYNOR_THREADS") else { return Ok(()) };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("SYNOR_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(e.to_string()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    let (field, format) = (cli.field, cli.format);
    match cli.command {
        Command::Betti(a) => commands::betti(&a, field, format),
        Command::Resolve(a) => commands::resolve(&a, field, format),
        Command::Lattice(a) => commands::lattice(&a, field, format),
        Command::ShuffleDemo { lattice, left, right, vars } => {
            commands::shuffle_demo(&lattice, vars.as_deref(), &left, &right, field, format)
        }
        Command::Verify { which, reproducer } => commands::verify(which, field, format, &reproducer),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::Verification(msg) => eprintln!("verification failed: {msg}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
