//! `deficit`: Regge action, action spectrum, triangulation census and the
//! nearly-flat vacuum model from the command line.

mod commands;
mod error;
mod manifest;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::{CliError, EXIT_USAGE};
use manifest::Run;

#[derive(Parser, Debug)]
#[command(name = "deficit", version, about = "Combinatorial Regge action and triangulation census tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Regge action of triangulations read from a file.
    Action(commands::action::Args),
    /// Admissible action levels at fixed size, optionally bracketing a target.
    Spectrum(commands::spectrum::Args),
    /// Enumerate triangulations up to isomorphism.
    Census(commands::census::Args),
    /// Entropy per volume against action from a census directory.
    Entropy(commands::entropy::Args),
    /// Cosmological constant of the nearly-flat model.
    Lambda(commands::lambda::Args),
}

fn run(command: Command, args: Vec<String>) -> Result<(), CliError> {
    match command {
        Command::Action(a) => commands::action::run(a, &Run::new("action", args)),
        Command::Spectrum(a) => commands::spectrum::run(a, &Run::new("spectrum", args)),
        Command::Census(a) => commands::census::run(a, &Run::new("census", args)),
        Command::Entropy(a) => commands::entropy::run(a, &Run::new("entropy", args)),
        Command::Lambda(a) => commands::lambda::run(a, &Run::new("lambda", args)),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args_os().map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
