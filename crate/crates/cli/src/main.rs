//! `dftstat` command-line driver.
//!
//! Exit codes: 0 when the command ran (whatever the test decided), 2 for
//! input errors, 3 for numerical failures.

mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;

const EXIT_INPUT: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

fn dispatch(command: &Command) -> dftstat::Result<Outcome> {
    match command {
        Command::Test(c) => commands::run_test(c),
        Command::Segment(c) => commands::run_segment(c),
        Command::Simulate(c) => commands::run_simulate(c),
        Command::Mc(c) => commands::run_mc(c),
        Command::Scan(c) => commands::run_scan(c),
        Command::Power(c) => commands::run_power(c),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on malformed flags
    let cli = Cli::parse();
    let outcome = dispatch(&cli.command).and_then(|o| o.artifacts.write().map(|_| o));
    match outcome {
        Ok(o) => {
            for w in &o.warnings {
                eprintln!("warning: {w}");
            }
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(o.stdout.as_bytes()).is_err() {
                return ExitCode::from(EXIT_INPUT);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_INPUT })
        }
    }
}
