//! Command-line front end for interaction-network extraction and
//! Fisher-information parameter selection on multi-agent positional traces.
//!
//! Wraps the `interflow-core` pipeline into reproducible batch commands:
//! `simulate` and `sweep` generate synthetic games, `te` turns trace files
//! into per-game transfer-entropy matrices, `diagram` aggregates matrices
//! into the interaction diagram and names the hub, `fisher` estimates the
//! Fisher curve over a theta-labeled sweep directory and selects theta*,
//! and `report` renders the results for humans. Every command writes a
//! manifest recording inputs, digests, configuration and seed.

pub mod cli;
pub mod commands;
pub mod manifest;
pub mod outputs;
pub mod scenario;
pub mod tracefile;

/// Command failure, split by exit code: user/config errors exit 1,
/// internal errors exit 2.
#[derive(Debug)]
pub enum CliError {
    User(anyhow::Error),
    Internal(anyhow::Error),
}

impl CliError {
    pub fn user(msg: impl Into<String>) -> CliError {
        CliError::User(anyhow::anyhow!(msg.into()))
    }
}

pub(crate) trait ResultExt<T> {
    /// Marks a failure as a user/config error (exit code 1).
    fn user_err(self) -> Result<T, CliError>;
    /// Marks a failure as an internal error (exit code 2).
    fn internal_err(self) -> Result<T, CliError>;
}

impl<T, E: Into<anyhow::Error>> ResultExt<T> for Result<T, E> {
    fn user_err(self) -> Result<T, CliError> {
        self.map_err(|e| CliError::User(e.into()))
    }

    fn internal_err(self) -> Result<T, CliError> {
        self.map_err(|e| CliError::Internal(e.into()))
    }
}

/// Parses the command line and runs one command, returning the process
/// exit code: 0 success, 1 user/config error, 2 internal error.
pub fn run() -> i32 {
    use clap::Parser;
    let parsed = cli::Cli::try_parse();
    let cli = match parsed {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match commands::dispatch(&cli.command) {
        Ok(()) => 0,
        Err(CliError::User(e)) => {
            eprintln!("error: {e:#}");
            1
        }
        Err(CliError::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            2
        }
    }
}
