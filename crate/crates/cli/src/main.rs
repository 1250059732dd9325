//! `roth`: command-line front end for roth-core.

mod args;
mod commands;
mod error;
mod inputs;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use error::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = configure_jobs(cli.jobs).and_then(|()| commands::run(&cli));
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("roth: {e}");
            e.exit_code()
        }
    }
}

fn configure_jobs(jobs: Option<usize>) -> Result<(), CliError> {
    match jobs {
        None => Ok(()),
        Some(0) => Err(CliError::usage("--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::usage(format!("--jobs {n}: {e}"))),
    }
}
