//! `fairwire`: solve, verify, generate and benchmark connection-time plans.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fairwire::ratio::{parse_rational, Rational};

#[derive(Parser, Debug)]
#[command(name = "fairwire", version, about = "Leximin-fair electricity connection time on tree networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Leximin,
    Egalitarian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Exact,
    Fptas,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a leximin or egalitarian plan for an instance file.
    Solve {
        #[arg(short, long)]
        input: std::path::PathBuf,
        /// Write the plan file here.
        #[arg(short, long)]
        output: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Leximin)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Oracle::Fptas)]
        oracle: Oracle,
        /// Shorthand for `--oracle exact`.
        #[arg(long)]
        exact: bool,
        /// Approximation parameter; defaults to the file's epsilon, then 1/10.
        #[arg(long, value_parser = rational_arg)]
        eps: Option<Rational>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Geographic Knapsack over the per-agent values of an instance file.
    Knapsack {
        #[arg(short, long)]
        input: std::path::PathBuf,
        /// Run the rounded path with this epsilon (otherwise exact, or the file's epsilon for fractional values).
        #[arg(long, value_parser = rational_arg)]
        eps: Option<Rational>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Check a plan file against an instance file.
    Verify {
        #[arg(short, long)]
        input: std::path::PathBuf,
        #[arg(short, long)]
        plan: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Generate an instance file.
    Gen {
        /// Random attachment tree.
        #[arg(long, conflicts_with = "partition", required_unless_present = "partition")]
        random: bool,
        /// Star instance from a comma-separated demand list.
        #[arg(long, value_delimiter = ',')]
        partition: Option<Vec<u64>>,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        demand_min: u64,
        #[arg(long, default_value_t = 10)]
        demand_max: u64,
        /// Supply as a fraction of total demand.
        #[arg(long, value_parser = rational_arg, conflicts_with = "supply")]
        supply_fraction: Option<Rational>,
        /// Fixed supply.
        #[arg(long)]
        supply: Option<u64>,
        /// Also draw integer item values in 1..=VALUES_MAX.
        #[arg(long)]
        values_max: Option<u64>,
        #[arg(short, long)]
        output: Option<std::path::PathBuf>,
    },
    /// Time the approximation scheme on random instances.
    Bench {
        /// Instance sizes, comma-separated.
        #[arg(long, value_delimiter = ',', default_values_t = vec![25usize, 50, 100])]
        n: Vec<usize>,
        #[arg(long, value_parser = rational_arg, default_value = "1/10")]
        eps: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        values_max: u64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve { input, output, mode, oracle, exact, eps, format } => {
            let oracle = if exact { Oracle::Exact } else { oracle };
            commands::solve(&input, output.as_deref(), mode, oracle, eps, format)
        }
        Command::Knapsack { input, eps, format } => commands::knapsack(&input, eps, format),
        Command::Verify { input, plan, format } => commands::verify(&input, &plan, format),
        Command::Gen {
            random: _,
            partition,
            n,
            seed,
            demand_min,
            demand_max,
            supply_fraction,
            supply,
            values_max,
            output,
        } => commands::gen(commands::GenArgs {
            partition,
            n,
            seed,
            demands: demand_min..=demand_max,
            supply_fraction,
            supply,
            values_max,
            output,
        }),
        Command::Bench { n, eps, seed, values_max, trials, format } => {
            commands::bench(&n, &eps, seed, values_max, trials, format)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
