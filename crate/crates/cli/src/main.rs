//! Command-line front end for the one-dimensional contact-interaction
//! library: scattering sweeps, identical-particle exchange amplitudes,
//! finite-width regularization studies, connection-matrix factorization,
//! and duality checks.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(cli.command) {
        Ok(output) => {
            if let Some(path) = &output.path {
                if let Err(e) = std::fs::write(path, &output.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", output.text);
            }
            if output.check_failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(commands::CliError::Invalid(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
