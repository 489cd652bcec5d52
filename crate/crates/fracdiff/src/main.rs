use std::process::ExitCode;

use clap::Parser;
use fracdiff::Cli;

fn main() -> ExitCode {
    match fracdiff::run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fracdiff: {e}");
            e.exit_code()
        }
    }
}
