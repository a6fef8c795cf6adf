use std::process::ExitCode;

use clap::Parser;
use radial_gps::cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, out) = match execute(&cli.command) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &outcome.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.text),
    }
    for d in &outcome.diagnostics {
        eprintln!("{d}");
    }
    if outcome.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
