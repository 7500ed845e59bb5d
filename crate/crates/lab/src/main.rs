use std::io::Write;
use std::process::ExitCode;

use acm_lab::cli::{self, Cli, RunConfig};
use acm_lab::Result;
use clap::Parser;

fn execute(cli: Cli) -> Result<i32> {
    let config = RunConfig::from_cli(cli)?;
    let outcome = cli::run(&config)?;
    match &config.output {
        Some(path) => std::fs::write(path, outcome.text.as_bytes())?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(outcome.text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("acm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
