//! `geomquant`: batch verifier for geometric r-matrices and their quantization.
//!
//! Exit codes: 0 every check passed, 1 a check failed, 2 the input could not
//! be read or parsed.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use geomquant::example::EpsMode;

#[derive(Parser, Debug)]
#[command(name = "geomquant", version, about = "Exact quantization of geometric classical r-matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,

    /// Where to write the produced artifact. Without it the artifact goes to
    /// stdout and the report to stderr.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the classical Yang-Baxter equation for an r-matrix file.
    CheckCybe {
        input: PathBuf,
        #[arg(long, default_value = "symbolic", value_parser = parse_eps)]
        epsilon: EpsMode,
    },
    /// Build the 7-tuple of an r-matrix file.
    BuildCbcst {
        input: PathBuf,
        #[arg(long, default_value = "symbolic", value_parser = parse_eps)]
        epsilon: EpsMode,
    },
    /// Recover the r-matrix of a 7-tuple file.
    ToRmatrix {
        input: PathBuf,
        #[arg(long, default_value = "symbolic", value_parser = parse_eps)]
        epsilon: EpsMode,
    },
    /// Quantize an r-matrix or 7-tuple file into a series dump of R.
    Quantize {
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long, default_value = "symbolic", value_parser = parse_eps)]
        epsilon: EpsMode,
        /// Also check the braid equation, the classical limit and unitarity.
        #[arg(long)]
        verify: bool,
        /// Compare with closed forms from a JSON file `{"star": [..], "circ": [..]}`.
        #[arg(long)]
        closed_form: Option<PathBuf>,
    },
    /// Check the braid equation for a series dump of R.
    CheckBraid { input: PathBuf },
    /// Run every check on the built-in three-dimensional example.
    VerifyExample5 {
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// May be repeated; defaults to symbolic, 1 and 0.
        #[arg(long, value_parser = parse_eps)]
        epsilon: Vec<EpsMode>,
        /// Perturb the example as a negative control.
        #[arg(long)]
        corrupt: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

fn parse_eps(s: &str) -> Result<EpsMode, String> {
    s.parse().map_err(|e: geomquant::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(commands::run(&cli))
}
