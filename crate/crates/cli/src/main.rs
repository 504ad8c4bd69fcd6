mod args;
mod commands;
mod io;

use std::process::ExitCode;

use clap::Parser;
use pfvdc::Error;

use args::{Cli, Command};

/// Failures surfaced to the shell.
#[derive(Debug)]
pub enum Failure {
    Lib(Error),
    Io(String),
    /// A certificate or check could not be decided.
    Inconclusive,
    /// A verification check failed.
    Failed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Lib(Error::Resource(_)) => 4,
        Failure::Lib(Error::Numerical(_)) | Failure::Failed => 1,
        Failure::Lib(_) | Failure::Io(_) => 2,
        Failure::Inconclusive => 3,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(a) => commands::spectrum::run(&a),
        Command::Generate(a) => commands::generate::run(&a),
        Command::Discrepancy(a) => commands::discrepancy::run(&a),
        Command::Verify(a) => commands::verify::run(&a),
        Command::Fit(a) => commands::fit::run(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Lib(e) => eprintln!("pfvdc: {e}"),
                Failure::Io(e) => eprintln!("pfvdc: {e}"),
                Failure::Inconclusive => eprintln!("pfvdc: certificate inconclusive"),
                Failure::Failed => eprintln!("pfvdc: verification failed"),
            }
            ExitCode::from(exit_code(&f))
        }
    }
}
