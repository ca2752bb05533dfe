//! The `quad` command line: rule tables, the `∫ dx / ln x` demonstration,
//! rule application and error coefficients.
//!
//! Exit codes: 0 success, 2 usage error, 3 data error, 1 internal failure.

mod demo;
mod integrate;
mod tables;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::gausscf::MAX_ORDER;
use crate::numerics::Precision;

pub use demo::{demo_rows, render_demo, DemoRow, DEMO_FROM, DEMO_WIDTH};
pub use integrate::{parse_samples, Samples};
pub use tables::{render_tables, table_entry, TableEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleKind {
    Gauss,
    Cotes,
}

#[derive(Debug, Parser)]
#[command(name = "quad", version, about = "Gaussian quadrature from moment series and continued fractions")]
pub struct Cli {
    /// Working precision in significant decimal digits (minimum 40).
    #[arg(long, global = true, env = "QUAD_PRECISION", default_value_t = Precision::DEFAULT_DIGITS)]
    pub precision: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print polynomials, nodes, weights and leading error terms of the
    /// Gaussian rules.
    Tables {
        #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        n_min: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Integrate 1/ln x over [100000, 200000] with one to n_max+1 nodes.
    #[command(name = "demo-1815")]
    Demo1815 {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Apply a rule to a built-in integrand or to tabulated values.
    Integrate {
        #[arg(long, value_enum, default_value_t = RuleKind::Gauss)]
        rule: RuleKind,
        #[arg(long)]
        n: Option<usize>,
        /// `reciprocal-log`, `runge`, or `poly:c0,c1,...` (ascending).
        #[arg(long = "fn", conflicts_with = "samples", required_unless_present = "samples")]
        function: Option<String>,
        /// File of node-aligned values with a `#rule gauss n=<n> convention=t` header.
        #[arg(long)]
        samples: Option<PathBuf>,
        /// Left end g of the interval.
        #[arg(long = "from", default_value = "0", allow_hyphen_values = true)]
        from: String,
        /// Width Δ of the interval.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        width: String,
    },
    /// Print the moment deficits k(0) .. k(K-1) of a rule.
    ErrorCoeffs {
        #[arg(long, value_enum, default_value_t = RuleKind::Gauss)]
        rule: RuleKind,
        #[arg(long)]
        n: usize,
        /// Number of coefficients (at most 64).
        #[arg(long = "k", default_value_t = 8)]
        count: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Internal(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Internal(_) => 1,
        }
    }
}

pub(crate) fn check_order(n: usize) -> Result<(), CliError> {
    if n > MAX_ORDER {
        return Err(CliError::Usage(format!(
            "n = {n} is not supported (0 <= n <= {MAX_ORDER})"
        )));
    }
    Ok(())
}

/// Runs a parsed command and returns its rendered output.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let precision =
        Precision::new(cli.precision).map_err(|e| CliError::Usage(e.to_string()))?;
    match &cli.command {
        Command::Tables { n, n_min, n_max } => {
            let (lo, hi) = n.map_or((*n_min, *n_max), |n| (n, n));
            if lo > hi {
                return Err(CliError::Usage(format!("--n-min {lo} exceeds --n-max {hi}")));
            }
            check_order(hi)?;
            let entries = (lo..=hi)
                .map(|n| table_entry(n, precision))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(render_tables(&entries, cli.format))
        }
        Command::Demo1815 { n_max } => {
            check_order(*n_max)?;
            let rows = demo_rows(*n_max, precision)?;
            Ok(render_demo(&rows, cli.format))
        }
        Command::Integrate {
            rule,
            n,
            function,
            samples,
            from,
            width,
        } => integrate::run(
            *rule,
            *n,
            function.as_deref(),
            samples.as_deref(),
            from,
            width,
            cli.format,
            precision,
        ),
        Command::ErrorCoeffs { rule, n, count } => {
            integrate::error_coeffs(*rule, *n, *count, cli.format, precision)
        }
    }
}

/// Parses `args`, runs the command, writes output, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("quad: {e}");
            e.exit_code()
        }
    }
}
