mod bijection;
mod report;
mod stats;
mod verify;
mod walk;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "hookbranch",
    version,
    about = "Checks weighted branching rules for hook lengths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a polynomial identity for one or more partitions.
    Verify(verify::VerifyArgs),
    /// Run the bijection and its inverse over label arrangements.
    Bijection(bijection::BijectionArgs),
    /// Exact terminal distribution of a weighted hook walk, optionally
    /// compared with a Monte Carlo estimate.
    Walk(walk::WalkArgs),
    /// Tableau counts, recursions and content statistics.
    Stats(stats::StatsArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, format) = match &cli.command {
        Command::Verify(a) => (verify::run(a), a.out.format),
        Command::Bijection(a) => (bijection::run(a), a.out.format),
        Command::Walk(a) => (walk::run(a), a.out.format),
        Command::Stats(a) => (stats::run(a), a.out.format),
    };
    match result {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(report.render(format).as_bytes());
            if report.pass {
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

/// Fails with a usage error unless a seed was given.
fn require_seed(seed: Option<u64>, what: &str) -> anyhow::Result<u64> {
    seed.ok_or_else(|| anyhow::anyhow!("--seed is required for {what}"))
}
