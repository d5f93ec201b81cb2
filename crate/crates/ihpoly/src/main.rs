use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ihpoly::cli::{
    self, CliError, OutputFormat, RunReport, TwoStrataDocument, VerifyScope, EXIT_USAGE,
};

/// Exact intersection-cohomology Poincaré polynomials for varieties with a
/// two-strata resolution of singularities.
#[derive(Parser)]
#[command(name = "ihpoly", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

impl From<Format> for OutputFormat {
    fn from(format: Format) -> Self {
        match format {
            Format::Text => OutputFormat::Text,
            Format::Structured => OutputFormat::Structured,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the generic two-strata engine on a JSON input document.
    ///
    /// The document carries the dimensions n, m, p, q, the fiber Betti
    /// numbers, and the coefficient arrays of the resolution and
    /// singular-locus Poincaré polynomials (indexed from degree 0).
    Generic {
        /// Path to the input document.
        file: PathBuf,
    },
    /// Single-condition Schubert variety for the datum (i, j, k, l).
    Schubert { i: i64, j: i64, k: i64, l: i64 },
    /// Hypersurface of P^5 with degree vector (d1, d2, d3, d4).
    Hypersurface { d1: u32, d2: u32, d3: u32, d4: u32 },
    /// Run verification sweeps and report mismatch counts (expected: zero).
    Verify {
        /// Check the Schubert polynomial identities.
        #[arg(long)]
        schubert: bool,
        /// Cross-check the hypersurface model against the generic engine.
        #[arg(long)]
        hypersurface: bool,
        /// Largest ambient dimension l for the Schubert sweep.
        #[arg(long, default_value_t = 8)]
        max_l: i64,
        /// Largest equation degree for the hypersurface sweep.
        #[arg(long, default_value_t = 6)]
        max_d: u32,
    },
}

fn load_document(path: &PathBuf) -> Result<TwoStrataDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

fn run(args: Cli) -> Result<RunReport, CliError> {
    let report = match args.command {
        Command::Generic { file } => cli::cmd_generic(&load_document(&file)?),
        Command::Schubert { i, j, k, l } => cli::cmd_schubert(i, j, k, l),
        Command::Hypersurface { d1, d2, d3, d4 } => cli::cmd_hypersurface(d1, d2, d3, d4),
        Command::Verify { schubert, hypersurface, max_l, max_d } => {
            // with no scope flag, run everything
            let scope = if schubert || hypersurface {
                VerifyScope { schubert, hypersurface }
            } else {
                VerifyScope { schubert: true, hypersurface: true }
            };
            cli::cmd_verify(scope, max_l, max_d)
        }
    };
    Ok(report)
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let format = args.format.into();
    match run(args) {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::from(report.exit_code())
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
