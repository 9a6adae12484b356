//! `relbb`: command-line access to the relbb library.
//!
//! Exit codes: 0 success, 1 statistical or invariant failure (or a numerical
//! routine that could not finish), 2 usage error.

mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::{CliError, Outcome};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // Usage errors stay on one line; `--help` has the details.
            let rendered = e.render().to_string();
            eprintln!("{}", rendered.lines().next().unwrap_or("error: invalid arguments"));
            return ExitCode::from(e.exit_code() as u8);
        }
    };

    let (name, format, result) = match &cli.command {
        Command::Spectrum(a) => ("spectrum", a.common.format, commands::spectrum(a)),
        Command::BoostMode(a) => ("boost-mode", a.common.format, commands::boost_mode_cmd(a)),
        Command::EnergyDensity(a) => ("energy-density", a.common.format, commands::energy_density(a)),
        Command::Anisotropy(a) => ("anisotropy", a.common.format, commands::anisotropy(a)),
        Command::McVerify(a) => ("mc-verify", a.common.format, commands::mc_verify(a)),
        Command::Selftest(a) => ("selftest", a.format, commands::selftest(a)),
    };

    match result {
        Ok(Outcome { report, inputs, exit_code }) => {
            let (stdout, stderr) = report.render(format, name, inputs);
            let _ = std::io::stdout().lock().write_all(stdout.as_bytes());
            let _ = std::io::stderr().lock().write_all(stderr.as_bytes());
            ExitCode::from(exit_code as u8)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
