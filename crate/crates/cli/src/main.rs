use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kkt_cli::commands::{self, CliError, ExportFormat, VerifyArgs};

#[derive(Parser)]
#[command(name = "kkt", version, about = "Exact composition, Jordan and Kantor-Koecher-Tits algebras")]
struct Cli {
    /// Seed for sampled suites.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Sample count for sampled suites.
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Places for local classes, e.g. inf,2,3,5.
    #[arg(long, global = true, default_value = "inf,2,3,5,7")]
    places: String,
    /// Worker threads for suites; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and print its structure constants as JSON.
    Build {
        /// Descriptor such as jordan:H3:octonion:split or root:C:3.
        descriptor: String,
    },
    /// Run verification suites on a descriptor or an algebra JSON file.
    Verify {
        /// Descriptor, JSON file path, inline JSON, or - for stdin.
        target: String,
        /// Comma-separated suites, or all.
        #[arg(long, default_value = "all")]
        suites: String,
    },
    /// Diagonalize a Jordan element and report its rank, representative and local classes.
    Classify {
        /// Element JSON file path, inline JSON, or - for stdin.
        element: String,
    },
    /// Export a structure report (text) or the structure constants (json).
    Export {
        descriptor: String,
        #[arg(long, value_enum, default_value_t = ExportFormat::Text)]
        format: ExportFormat,
    },
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let places = commands::parse_places(&cli.places)?;
    let (text, passed) = pool.install(|| match &cli.command {
        Command::Build { descriptor } => commands::cmd_build(descriptor).map(|t| (t, true)),
        Command::Verify { target, suites } => commands::cmd_verify(&VerifyArgs {
            target,
            suites,
            seed: cli.seed,
            samples: cli.samples as usize,
        }),
        Command::Classify { element } => commands::cmd_classify(element, &places).map(|t| (t, true)),
        Command::Export { descriptor, format } => commands::cmd_export(descriptor, *format).map(|t| (t, true)),
    })?;
    emit(&cli.out, &text)?;
    Ok(passed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("kkt: {e}");
            ExitCode::from(2)
        }
    }
}
