//! Batch front end: session files in, CSV tables and JSON/text reports out.

pub mod explain;
pub mod run;
pub mod session;

use std::path::Path;

pub use explain::explain;
pub use run::{run, RunOptions, RunSummary, Status, TaskOutcome};
pub use session::{Overrides, Session, SessionError, Task, TaskKind};

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(SessionError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Parse(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) => f.write_str(m),
            CliError::Parse(e) => write!(f, "parse error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Loads and runs the session at `path`.
pub fn run_session(path: &Path, overrides: &Overrides, opts: &RunOptions) -> Result<RunSummary, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let session = Session::parse(&text, overrides).map_err(CliError::Parse)?;
    Ok(run(&session, opts))
}
