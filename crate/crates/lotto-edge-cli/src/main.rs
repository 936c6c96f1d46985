//! `lotto-edge`: analyze rolling-jackpot lottery drawings from the shell.
//!
//! Exit codes: 0 on success, 1 on a domain/data error (the error name is
//! printed), 2 on a usage error.

use std::process::ExitCode;

use clap::Parser;

mod cli;
mod commands;
mod drawings;
mod report;
mod resolve;

fn main() -> ExitCode {
    let parsed = cli::Cli::parse();
    match commands::run(parsed) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error[{}]: {error}", error.name());
            ExitCode::from(1)
        }
    }
}
