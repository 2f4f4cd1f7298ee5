//! Command-line interface: analyze the cyclic structure, rank-k numerical
//! ranges and Perron polynomial ranges of matrices from files or built-in
//! fixtures, emitting JSON reports, CSV tables and SVG figures.

mod commands;
mod csvout;
mod io;
mod report;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::OutputFormat;

#[derive(Parser)]
#[command(
    name = "numrange",
    about = "Rank-k numerical ranges of matrices and Perron matrix polynomials",
    long_about = None,
    after_help = "Inputs are matrix/polynomial files or one of the built-in fixtures:\n  \
                  example1, example2, example3A, example3B, p5, b-shift-demo"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Irreducibility, imprimitivity index, cyclic block structure.
    Structure {
        /// Matrix file path or fixture name.
        input: String,
        /// Write the JSON report to this path instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank-k numerical range: radius, maximal elements, boundary.
    Range {
        /// Matrix file path or fixture name.
        input: String,
        /// Rank of the range.
        #[arg(short, long, default_value_t = 1)]
        k: usize,
        /// Number of sampled support directions.
        #[arg(long, default_value_t = numrange::range::DEFAULT_SAMPLES)]
        samples: usize,
        /// Output format.
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Write output to this path instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the maximal-element modulus tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Rank-k numerical range of a matrix polynomial via lattice scan.
    Polyrange {
        /// Polynomial file path.
        input: String,
        /// Rank of the range.
        #[arg(short, long, default_value_t = 1)]
        k: usize,
        /// Lattice cells per bounding radius (spacing = radius/grid).
        #[arg(long, default_value_t = 100)]
        grid: usize,
        /// Angular samples per lattice point.
        #[arg(long, default_value_t = numrange::poly::DEFAULT_POLY_SAMPLES)]
        samples: usize,
        /// Output format.
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Write output to this path instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suite on an input, one PASS/FAIL line per check.
    Verify {
        /// Matrix file path or fixture name.
        input: String,
        /// Largest rank exercised by the checks.
        #[arg(short, long, default_value_t = 2)]
        k: usize,
        /// Number of sampled support directions.
        #[arg(long, default_value_t = numrange::range::DEFAULT_SAMPLES)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Structure { input, out } => commands::cmd_structure(input, out.as_ref()),
        Command::Range {
            input,
            k,
            samples,
            format,
            out,
            tolerance,
        } => commands::cmd_range(input, *k, *samples, *format, out.as_ref(), *tolerance),
        Command::Polyrange {
            input,
            k,
            grid,
            samples,
            format,
            out,
        } => commands::cmd_polyrange(input, *k, *grid, *samples, *format, out.as_ref()),
        Command::Verify { input, k, samples } => commands::cmd_verify(input, *k, *samples),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
