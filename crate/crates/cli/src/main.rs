use std::io::Write;
use std::process::ExitCode;

use clap::{CommandFactory, Parser};
use homogeo_cli::{execute, Cli, CliError, EXIT_RUNTIME, EXIT_UNVERIFIED};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok((body, report)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(body.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(EXIT_RUNTIME as u8);
            }
            if report.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_UNVERIFIED as u8)
            }
        }
        Err(CliError::Usage(msg)) => Cli::command()
            .error(clap::error::ErrorKind::InvalidValue, msg)
            .exit(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_RUNTIME as u8)
        }
    }
}
