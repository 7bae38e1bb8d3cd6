//! Exit codes: 0 success, 2 when a computation ran but the checked property
//! failed, 1 for usage, parse and I/O errors.

mod algebraic;
mod args;
mod flow;
mod input;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use spinor_forge::algebra::{Mode, Rational};

use args::{Cli, Command};

fn run(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Evolve(a) => flow::evolve(&a.wave, &cli.global),
        Command::ExoticEvolve(a) => flow::exotic_evolve(a, &cli.global),
        cmd => match cli.global.mode {
            Mode::Exact => algebraic::run::<Rational>(cmd, &cli.global),
            Mode::Float => algebraic::run::<f64>(cmd, &cli.global),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
