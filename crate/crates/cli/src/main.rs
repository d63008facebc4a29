//! `quorumlace`: league analysis, protocol simulation, model comparison and
//! oracle fuzzing from the command line.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails,
//! 2 for usage, input or capacity errors.

mod analyze;
mod compare;
mod fuzz;
mod report;
mod simulate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "quorumlace",
    version,
    about = "Leagues, quorums and protocol simulation for personalized fail-prone systems"
)]
struct Cli {
    /// Print the canonical JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a configuration: slices, survivor sets, quorums, leagues.
    Analyze(analyze::Args),
    /// Run a protocol in the simulator and check its properties.
    Simulate(simulate::Args),
    /// Run a model-comparison check on a model file.
    Compare(compare::Args),
    /// Check random instances against the brute-force oracle.
    Fuzz(fuzz::Args),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze(a) => analyze::run(a),
        Command::Simulate(a) => simulate::run(a),
        Command::Compare(a) => compare::run(a),
        Command::Fuzz(a) => fuzz::run(a),
    };
    match outcome {
        Ok(report) => {
            report.print(cli.json);
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

pub(crate) fn read(path: &PathBuf) -> anyhow::Result<String> {
    use anyhow::Context;
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}
