//! `rsigma`: check seed hypotheses, generate families of irreducible and
//! completely normal polynomials, and run the standalone oracles.
//!
//! Exit codes: 0 success, 1 a check failed or no theorem applies, 2 bad
//! arguments or a seed that cannot be constructed.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "rsigma", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every applicable theorem verdict for a seed, with witnesses.
    Check(SeedArgs),
    /// Iterate the transform and report each step.
    Gen(GenArgs),
    /// Run a built-in worked example end to end with full verification.
    Examples {
        #[arg(value_enum)]
        which: Example,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Run one oracle on a polynomial over F_q.
    Verify {
        #[arg(value_enum)]
        property: Property,
        #[arg(long)]
        q: u64,
        /// Ascending coefficients, e.g. "1,0,1" for x^2+1.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        poly: Vec<i64>,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
}

#[derive(Args, Clone)]
pub struct SeedArgs {
    /// Field size (prime).
    #[arg(long)]
    pub q: u64,
    /// Matrix entries a,b,c,d; negative values are reduced mod q.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub sigma: Vec<i64>,
    /// Degree multiplier per step.
    #[arg(long)]
    pub t: usize,
    /// Seed P_{σ⁻¹}(x^n - A), given as "n,A".
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "seed",
        required_unless_present = "seed"
    )]
    pub binomial: Option<Vec<i64>>,
    /// Explicit seed, ascending coefficients.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub seed: Option<Vec<i64>>,
    #[arg(long, value_enum, default_value = "text")]
    pub output: Output,
}

#[derive(Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub seed: SeedArgs,
    /// Last step to produce.
    #[arg(long = "k", default_value_t = 3)]
    pub k_max: usize,
    #[arg(long, value_enum, default_value = "fast")]
    pub verify: Level,
    /// Disable parallel verification.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Level {
    None,
    Fast,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Example {
    F7,
    F31,
    Chapman,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Property {
    Irreducible,
    Normal,
    Cnormal,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(args) => commands::check(&args),
        Command::Gen(args) => commands::gen(&args),
        Command::Examples { which, output } => commands::examples(which, output),
        Command::Verify {
            property,
            q,
            poly,
            output,
        } => commands::verify(property, q, &poly, output),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
