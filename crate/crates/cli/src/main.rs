use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use torhilbert::{explain, run_session, Overrides, RunOptions, Status};

#[derive(Parser)]
#[command(name = "torhilbert", version, about = "Tables and checks for lengths of Tor of quotients by ideal powers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a session file.
    Run {
        session: PathBuf,
        /// Variable priority, most significant first (names or indices, comma separated).
        #[arg(long, value_delimiter = ',')]
        seed_order: Option<Vec<String>>,
        /// Characteristic of the coefficient field.
        #[arg(long = "char")]
        characteristic: Option<u32>,
        /// Budget for prop5 and stabilize tasks.
        #[arg(long)]
        budget: Option<u32>,
        /// Degree cap for fits.
        #[arg(long)]
        max_degree: Option<u32>,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Evaluate table cells concurrently.
        #[arg(long)]
        parallel: bool,
        /// Verify Groebner and syzygy certificates while computing.
        #[arg(long)]
        certify: bool,
    },
    /// Print a narrative for a JSON report.
    Explain { report: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { session, seed_order, characteristic, budget, max_degree, out, parallel, certify } => {
            let overrides = Overrides { characteristic, seed_order, budget, max_degree };
            let opts = RunOptions { out, parallel, certify };
            match run_session(&session, &overrides, &opts) {
                Ok(summary) => {
                    for o in &summary.outcomes {
                        let mark = match o.status {
                            Status::Ok => "ok",
                            Status::Refuted => "REFUTED",
                            Status::Failed => "error",
                        };
                        println!("task {} ({} at line {}): {mark}: {}", o.index, o.kind.name(), o.line, o.summary);
                        for a in &o.artifacts {
                            println!("  wrote {}", a.display());
                        }
                    }
                    ExitCode::from(summary.exit_code() as u8)
                }
                Err(e) => {
                    eprintln!("{}: {e}", session.display());
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Command::Explain { report } => {
            let text = match std::fs::read_to_string(&report) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read {}: {e}", report.display());
                    return ExitCode::from(1);
                }
            };
            match serde_json::from_str(&text) {
                Ok(v) => {
                    print!("{}", explain(&v));
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("{}: not a JSON report: {e}", report.display());
                    ExitCode::from(2)
                }
            }
        }
    }
}
