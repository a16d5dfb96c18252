//! Command-line front end: load an algebra from a TOML config, run the
//! verification suites, evaluate diagram equations and export structures.
//!
//! Exit codes: 0 when every asserted check passes, 1 when one fails, 2 for
//! malformed input (config, parse or arity errors), 3 for IO and internal
//! failures.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{diagram, export, import, verify, DiagramArgs, VerifyArgs};
pub use config::{LoadedConfig, Suite, SuiteConfig};
pub use error::{CliError, CliResult};
pub use report::{Report, Status};

#[derive(Debug, Parser)]
#[command(name = "bfl", version, about = "Verify braided Frobenius algebras built from Hopf algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the verification suites selected in a config.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// JSON report path; defaults to the config's `output`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Check diagram equations by name or inline.
    Diagram {
        #[arg(long)]
        config: PathBuf,
        /// Move name from the library or `--moves`; `all` runs every move.
        #[arg(long, required_unless_present = "inline")]
        eq: Vec<String>,
        #[arg(long)]
        inline: Option<String>,
        /// Extra equation file; its names shadow the built-in library.
        #[arg(long)]
        moves: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write structure maps in tensor text form.
    Export {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Runs a parsed command, printing to stdout and stderr, and returns the exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Verify { config, out, jobs } => verify(&VerifyArgs { config, out, jobs }).map(|r| {
            print!("{}", r.text_summary());
            r.exit_code
        }),
        Command::Diagram {
            config,
            eq,
            inline,
            moves,
            out,
        } => diagram(&DiagramArgs {
            config,
            eq,
            inline,
            moves,
            out,
        })
        .map(|r| {
            print!("{}", r.text_summary());
            r.exit_code
        }),
        Command::Export { config, out } => export(&config, &out).map(|files| {
            for f in files {
                println!("{}", f.display());
            }
            0
        }),
    };
    result.unwrap_or_else(|e| {
        eprintln!("bfl: {e}");
        e.exit_code()
    })
}

/// Parses arguments and runs. Usage errors exit 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                2
            } else {
                0
            }
        }
    }
}
