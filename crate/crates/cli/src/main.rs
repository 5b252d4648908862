//! `mop`: command-line front end for the exact workbench.
//!
//! Exit status is 0 when every asserted identity holds, 1 when one fails
//! (the report, residuals included, is still written), and 2 on bad input.

mod cli;
mod commands;
mod params;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mop_core::Error;

use crate::cli::Cli;
use crate::params::Usage;

fn is_input_error(e: &anyhow::Error) -> bool {
    if e.downcast_ref::<Usage>().is_some() {
        return true;
    }
    matches!(
        e.downcast_ref::<Error>(),
        Some(
            Error::Parse(_)
                | Error::Invalid(_)
                | Error::BadAlpha(_)
                | Error::ZeroNu(_)
                | Error::WrongNuCount { .. }
                | Error::ZeroA
                | Error::InexactExponent(_)
                | Error::ConstraintViolated
        )
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    mop_core::par::init_from_env();
    let report = match commands::run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(if is_input_error(&e) { 2 } else { 1 });
        }
    };
    let out = match report.render(cli.params.format) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(1);
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
