mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use config::{exit_code, Cli, Command, RunConfig};

fn run(cli: &Cli) -> toral::Result<String> {
    match &cli.command {
        Command::Sequence(args) => commands::sequence(args),
        Command::Classify(args) => commands::classify(&RunConfig::from_args(args)?),
        Command::Count(args) => commands::count(&RunConfig::from_args(args)?),
        Command::Resonance(args) => commands::resonance(&RunConfig::from_args(args)?),
        Command::Fit(args) => commands::fit(&RunConfig::from_args(args)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
