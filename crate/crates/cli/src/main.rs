//! `l2betti`: analyze group presentations, verify their resolutions, and
//! batch-process directories with deterministic JSON output.

mod commands;
mod failure;
mod text;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "l2betti", version, about = "L2-Betti numbers of one-relator and surface-plus-one-relation groups")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,

    /// Largest finite group order cross-checked by the regular-representation oracle.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    oracle_bound: u64,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the L2-Betti report of a presentation file.
    Analyze {
        #[arg(required_unless_present = "known")]
        path: Option<PathBuf>,
        /// Report a registry group instead of reading a file (e.g. thompson-F).
        #[arg(long, conflicts_with = "path")]
        known: Option<String>,
    },
    /// Check a presentation file or an exported complex symbolically, and against the oracle when finite.
    Verify { path: PathBuf },
    /// Write the resolution of a presentation as a JSON document.
    ExportComplex { path: PathBuf },
    /// Run the regular-representation oracle on a finite presentation.
    Oracle { path: PathBuf },
    /// Extract the basis for a JSON pair {"A": .., "B": ..} with AB = 0.
    LmodDemo { path: PathBuf },
    /// Analyze every file in a directory, ordered by file name.
    Batch {
        dir: PathBuf,
        /// Worker threads; output does not depend on this.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze { path, known } => commands::analyze(&cli, path.as_deref(), known.as_deref()),
        Command::Verify { path } => commands::verify(&cli, path),
        Command::ExportComplex { path } => commands::export_complex(&cli, path),
        Command::Oracle { path } => commands::oracle(&cli, path),
        Command::LmodDemo { path } => commands::lmod_demo(&cli, path),
        Command::Batch { dir, jobs } => commands::batch(&cli, dir, *jobs),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", f.to_json());
            ExitCode::from(f.exit_code())
        }
    }
}
