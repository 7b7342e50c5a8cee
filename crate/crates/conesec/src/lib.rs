//! File formats, reports and the command-line front end for `conesec-core`.
//!
//! [`run`] executes a [`RunConfig`] and returns a [`Report`]; [`main_with`]
//! adds argument parsing, output and exit codes.

pub mod checks;
pub mod commands;
pub mod config;
pub mod corpus;
pub mod error;
pub mod report;
pub mod runner;
pub mod spec;

use std::ffi::OsString;

use clap::Parser;

pub use commands::run;
pub use config::{Cli, Command, Format, RunConfig};
pub use error::{Error, Result};
pub use report::Report;

/// Exit status for configuration and input errors.
pub const EXIT_CONFIG: i32 = 2;

/// Renders the report in the configured format.
pub fn render(report: &Report) -> Result<String> {
    match report.config.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    }
}

/// Runs the configuration and writes the report to `--out` or standard
/// output. Returns the exit status.
pub fn execute(cfg: &RunConfig) -> Result<i32> {
    let report = run(cfg)?;
    let text = render(&report)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    let s = &report.summary;
    eprintln!(
        "{} records, {} assertable, {} failed ({:.2} s)",
        s.records, s.assertable, s.failed, report.wall_clock_seconds
    );
    for r in report.records.iter().filter(|r| r.assertable && !r.passed) {
        eprintln!("FAILED {} [{}] lhs={} rhs={} {}", r.name, r.body, r.lhs, r.rhs, r.notes);
    }
    Ok(report.exit_code())
}

/// Entry point behind the binary: 0 when every assertable check passed, 1
/// when some failed, 2 on bad arguments or inputs.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { 0 };
        }
    };
    match execute(&cli.into_config()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}
