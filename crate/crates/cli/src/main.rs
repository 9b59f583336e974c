mod args;
mod commands;
mod config;
mod error;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::config::RunConfig;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::resolve(&cli.global).and_then(|cfg| {
        let outcome = commands::run(&cli.command, &cfg)?;
        match &cfg.out {
            Some(path) => std::fs::write(path, &outcome.text).map_err(|e| {
                error::CliError::usage(format!("cannot write {}: {e}", path.display()))
            })?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(outcome.text.as_bytes())?;
                stdout.flush()?;
            }
        }
        Ok(outcome.code)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
