//! Standard-library companion to the core crate: run configuration,
//! serialization, and the command implementations behind the binary.

pub mod commands;
pub mod config;
pub mod dto;
pub mod render;

use clap::error::ErrorKind;
use clap::Parser;

use config::{Cli, CliError};

/// Parses arguments, runs the selected command, and returns the process
/// exit code: 0 success, 1 usage, 2 resource cap, 3 certification
/// failure.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match commands::dispatch(&cli) {
        Ok(output) => match write_output(&cli, &output) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn write_output(cli: &Cli, output: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, output)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{output}");
            Ok(())
        }
    }
}
