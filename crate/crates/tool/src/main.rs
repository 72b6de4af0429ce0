use std::process::ExitCode;

use clap::Parser;
use eur_tool::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eur: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
