//! Command-line front end for `hilbtex`: generate surfaces, analyze images,
//! compare scanning methods and plot the results.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod plot;
pub mod table;

use std::ffi::OsString;

use clap::Parser;

use crate::args::{Cli, Command};
pub use crate::error::CliError;

/// Parses `args` (program name first), merges any `--config` file and runs
/// the chosen verb.
pub fn run<I, T>(args: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args = config::expand_args(args.into_iter().map(Into::into).collect())?;
    let cli = Cli::try_parse_from(&args)?;
    let argv: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match &cli.command {
        Command::Generate(a) => commands::generate(a, &argv),
        Command::Analyze(a) => commands::analyze(a, &argv),
        Command::Plot(a) => commands::plot(a, &argv),
        Command::Compare(a) => commands::compare(a, &argv),
    }
}
