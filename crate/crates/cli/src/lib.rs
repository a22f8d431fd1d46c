//! Command-line front end: theory tables, replicate runs, theory against
//! simulation sweeps and graph generation, all written as CSV.

mod commands;
mod config;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use netvax_core::{Error, ErrorKind};

pub use commands::{execute, Output};
pub use config::{parse_grid, Command, RunConfig};

pub fn exit_code(err: &Error) -> u8 {
    match err.kind() {
        ErrorKind::BadInput => 2,
        ErrorKind::Numerical => 3,
        ErrorKind::Generation => 4,
    }
}

/// Runs a command, writes its output to `--out` or stdout and maps errors to
/// exit codes.
pub fn run(config: &RunConfig) -> ExitCode {
    let result = execute(config).and_then(|out| {
        for note in &out.notes {
            eprintln!("netvax: {note}");
        }
        match &config.out {
            Some(path) => fs::write(path, &out.body)?,
            None => std::io::stdout().write_all(out.body.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("netvax: error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
