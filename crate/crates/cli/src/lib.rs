//! Command-line front end for `concat_equidist`.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: 0 success, 1 usage or I/O error, 2 domain error, 3 undecided
//! membership.

pub mod args;
pub mod render;
pub mod report;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

use crate::args::{Cli, Command, Format};
use crate::report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {}: {source}", path.display())]
    ReadInput { path: PathBuf, source: std::io::Error },

    #[error("{}:{line}: {msg}", path.display())]
    BadLine { path: PathBuf, line: usize, msg: String },

    #[error("cannot write output: {0}")]
    Output(String),

    #[error(transparent)]
    Core(#[from] concat_equidist::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::ReadInput { .. } | CliError::Output(_) => EXIT_USAGE,
            CliError::BadLine { .. } => EXIT_DOMAIN,
            CliError::Core(concat_equidist::Error::Undecided { .. }) => EXIT_UNDECIDED,
            CliError::Core(_) => EXIT_DOMAIN,
        }
    }
}

fn output_target(command: &Command) -> (Format, Option<&PathBuf>) {
    match command {
        Command::Tail(a) => (Format::Csv, a.output.as_ref()),
        Command::Count(a) => (a.output.format, a.output.output.as_ref()),
        Command::Scan(a) => (a.output.format, a.output.output.as_ref()),
        Command::Discrepancy(a) => (a.output.format, a.output.output.as_ref()),
        Command::Benford(a) => (a.output.format, a.output.output.as_ref()),
        Command::Limits(a) => (a.output.format, a.output.output.as_ref()),
    }
}

/// Runs a parsed command and returns its report.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let uncapped = cli.unsafe_uncapped;
    let work = || match &cli.command {
        Command::Tail(a) => report::tail(a),
        Command::Count(a) => report::count(a, uncapped),
        Command::Scan(a) => report::scan(a, uncapped),
        Command::Discrepancy(a) => report::discrepancy(a, uncapped),
        Command::Benford(a) => report::benford(a, uncapped),
        Command::Limits(a) => report::limits(a),
    };
    match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {n} threads: {e}")))?
            .install(work),
        None => work(),
    }
}

fn run_parsed(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let report = execute(cli)?;
    let (format, path) = output_target(&cli.command);
    match path {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            render::render(&report, format, &mut w)?;
            w.flush().map_err(|e| CliError::Output(e.to_string()))
        }
        None => render::render(&report, format, stdout),
    }
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if informational {
                let _ = write!(stdout, "{rendered}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{rendered}");
            return EXIT_USAGE;
        }
    };
    match run_parsed(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
