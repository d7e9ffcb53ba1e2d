//! `gcrs`: Gröbner bases, annihilators, Hilbert functions and regular
//! sequences for presentations of graded commutative algebras.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 usage or input
//! error, 3 a resource cap was exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "gcrs", version, about = "Computations in finitely presented graded commutative algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Worker threads for scans (0 = one per core, 1 = sequential).
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,
    /// Maximum number of classes one enumeration may produce.
    #[arg(long, default_value_t = gcrs_core::graded::DEFAULT_ENUMERATION_CAP, global = true)]
    pub enum_cap: u64,
    /// Abort Gröbner computations that reach this degree.
    #[arg(long, global = true)]
    pub degree_cap: Option<u32>,
    /// Comma-separated generator order overriding the file's order.
    #[arg(long, global = true)]
    pub gen_order: Option<String>,
    /// Regularity test to use (see `gcrs strategies`).
    #[arg(long, default_value = gcrs_core::regseq::DEFAULT_STRATEGY, global = true)]
    pub strategy: String,
    /// Include wall-clock times in reports.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a presentation.
    Check { file: PathBuf },
    /// Reduced Gröbner basis of the relation ideal, with verification.
    Gb { file: PathBuf },
    /// Dimensions of graded components.
    Hilbert {
        file: PathBuf,
        #[arg(long)]
        max_degree: u32,
    },
    /// Annihilator of an element.
    Ann {
        file: PathBuf,
        #[arg(long)]
        element: String,
        /// Elements to divide out first, separated by `;`.
        #[arg(long)]
        mod_out: Option<String>,
        /// Report the annihilator both with and without `--mod-out`.
        #[arg(long, requires = "mod_out")]
        both: bool,
    },
    /// Test whether a sequence is regular.
    Regtest {
        file: PathBuf,
        /// Elements separated by `;`.
        #[arg(long)]
        seq: String,
        #[arg(long)]
        mod_out: Option<String>,
    },
    /// Check that every class in a degree range is annihilated by a witness.
    Scan {
        file: PathBuf,
        /// Witnesses separated by `;`.
        #[arg(long)]
        witnesses: String,
        /// Degree range `A..B` (inclusive) or a single degree.
        #[arg(long)]
        degrees: String,
        #[arg(long)]
        mod_out: Option<String>,
    },
    /// List every regular class of one degree.
    Regscan {
        file: PathBuf,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        mod_out: Option<String>,
    },
    /// Search for a regular sequence with the given degrees.
    Search {
        file: PathBuf,
        /// Comma-separated degrees, for example `8,2`.
        #[arg(long)]
        degrees: String,
        /// Fixed first element(s), separated by `;`.
        #[arg(long)]
        seed_first: Option<String>,
        /// Maximum number of candidates to test.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        mod_out: Option<String>,
    },
    /// Extend scalars to F_{p^r} and write the new presentation.
    Basechange {
        file: PathBuf,
        #[arg(long)]
        ext: u32,
        /// Monic irreducible modulus in `@`, for example `@^2+@+1`.
        #[arg(long)]
        modulus: Option<String>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Krull dimension of the quotient ring.
    Dim { file: PathBuf },
    /// Check every claim of a manifest.
    Counterexample {
        file: PathBuf,
        /// Claim manifest; defaults to FILE with extension `.claims`, then the built-in manifest.
        #[arg(long)]
        claims: Option<PathBuf>,
    },
    /// List the available regularity tests.
    Strategies,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gcrs: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
