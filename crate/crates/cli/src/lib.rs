//! Command line, file formats and experiment recipes for the divisor-function
//! orbit workbench. The algorithms live in `orbitlab-core`; this crate adds
//! threads, IO and the `orbitlab` binary.

pub mod args;
pub mod commands;
pub mod envelope;
pub mod error;
pub mod numparse;
pub mod output;
pub mod par;
pub mod recipe;
pub mod report;
pub mod source;

use std::ffi::OsString;

use clap::Parser;

use args::{Cli, Command, Recipe};
use commands::Ctx;
pub use envelope::ResultEnvelope;
pub use error::{CliError, EXIT_INVARIANT, EXIT_OK, EXIT_USAGE};

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let ctx = Ctx::new(&cli.global);
    match &cli.command {
        Command::Run(a) => commands::run(&ctx, a).map(drop),
        Command::Table(a) => commands::table(&ctx, a).map(drop),
        Command::Mixing(a) => commands::mixing(&ctx, a).map(drop),
        Command::LaddersInOrbit(a) => commands::ladders_in_orbit(&ctx, a).map(drop),
        Command::LadderSample(a) => commands::ladder_sample(&ctx, a).map(drop),
        Command::ConcScan(a) => commands::conc_scan(&ctx, a).map(drop),
        Command::Tau(a) => commands::tau(&ctx, a),
        Command::Recipe(r) => match &r.recipe {
            Recipe::Table1(a) => recipe::table1(&ctx, a).map(drop),
            Recipe::Table2(a) => recipe::table2(&ctx, a).map(drop),
            Recipe::Figures(a) => recipe::figures(&ctx, a).map(drop),
        },
    }
}

/// Parses `argv`, runs it and returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("orbitlab: {e}");
            e.exit_code()
        }
    }
}
