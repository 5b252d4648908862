mod algebra;
mod ops;
mod poly;
mod verify;
mod weight;

use anyhow::Result;

use crate::cli::{Cli, Command};
use crate::report::Report;

pub fn run(cli: &Cli) -> Result<Report> {
    let p = &cli.params;
    match &cli.command {
        Command::Weight { cmd } => weight::run(p, cmd),
        Command::Ops { cmd } => ops::run(p, cmd),
        Command::Poly { cmd } => poly::run(p, cmd),
        Command::Algebra { cmd } => algebra::run(p, cmd),
        Command::Verify { cmd } => verify::run(p, cmd),
    }
}
