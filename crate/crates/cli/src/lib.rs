//! Command-line front end: point evaluation, identity suites, limit sweeps
//! and pole scans, with text, CSV and JSON-lines output.

pub mod args;
pub mod commands;
pub mod complex;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::Cli;
pub use commands::{CliError, EXIT_DOMAIN, EXIT_OK, EXIT_POLE, EXIT_USAGE, EXIT_VERIFY_FAILED};

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        args::Command::Eval(a) => commands::cmd_eval(a, out),
        args::Command::Verify(a) => commands::cmd_verify(a, out, err),
        args::Command::Sweep(a) => commands::cmd_sweep(a, out),
        args::Command::Poles(a) => commands::cmd_poles(a, out),
    };
    match result.and_then(|code| out.flush().map(|_| code).map_err(CliError::Io)) {
        Ok(code) => code,
        Err(e) => {
            e.report(err);
            e.exit_code()
        }
    }
}
