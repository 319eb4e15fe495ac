use std::process::ExitCode;

use clap::Parser;
use metric_gap::cli::{run, Cli};

fn main() -> ExitCode {
    run(&Cli::parse())
}
