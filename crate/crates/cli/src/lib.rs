//! Command-line front end for `homogeo`. The binary is a thin wrapper over
//! [`execute`], which tests call directly.

pub mod args;
pub mod commands;
pub mod report;

use std::time::Instant;

pub use args::{Cli, Command, OutputFormat};
pub use commands::{run, CliError};
pub use report::{Outcome, Report, SCHEMA_ID};

/// Exit status when a command ran but an internal verification failed.
pub const EXIT_UNVERIFIED: i32 = 3;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Runs `cli` and renders the result in the requested format, returning the
/// text for stdout and the report with its timing filled in.
pub fn execute(cli: &Cli) -> Result<(String, Report), CliError> {
    let start = Instant::now();
    let mut outcome = run(&cli.command)?;
    outcome.report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let body = match cli.command.output() {
        OutputFormat::Json => {
            let mut s = outcome.report.to_json();
            s.push('\n');
            s
        }
        OutputFormat::Csv => outcome.csv,
        OutputFormat::Text => outcome.text,
    };
    Ok((body, outcome.report))
}
