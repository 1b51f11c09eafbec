//! `tetra`: compute tetrahedron-instanton partition functions and certify
//! the closed formulas against localization.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use tetra_core::Error;

use args::{Cli, Command};

/// Exit codes: 0 success, 1 failed check, 2 invalid configuration,
/// 3 sampler exhausted, 4 internal invariant failure, 5 unwritable path.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) => 2,
        Error::SamplerExhausted { .. } => 3,
        Error::Io(_) => 5,
        _ => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(a) => commands::compute(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Enumerate(a) => commands::enumerate(&a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
