//! `qramp`: build nested-code ramp schemes, classify their access
//! structure and check the closed forms against state simulation.
//!
//! Exit codes: 0 success, 1 validation error, 2 check failure, 3 size guard.

mod args;
mod commands;
mod format;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qramp_core::Error),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use qramp_core::Error as E;
        match self {
            CliError::ChecksFailed(_) => 2,
            CliError::Core(E::InstanceTooLarge(_) | E::TooManyParticipants { .. }) => 3,
            _ => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Build(a) => commands::build(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::Verify(a) => commands::verify(a),
        Command::Simulate(a) => commands::simulate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
