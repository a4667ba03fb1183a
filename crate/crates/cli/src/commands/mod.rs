//! Command implementations.
//!
//! Commands follow a compute-then-write discipline: all outputs are rendered
//! in memory before the first file is created, and a failure while writing
//! removes whatever was already written, so an erroring run leaves no
//! partial outputs behind (the manifest is written last).

use std::path::{Path, PathBuf};

use crate::{CliError, ResultExt};

mod diagram;
mod fisher;
mod report;
mod simulate;
mod sweep;
mod te;

pub fn dispatch(command: &crate::cli::Command) -> Result<(), CliError> {
    use crate::cli::Command;
    match command {
        Command::Te(args) => te::run(args),
        Command::Diagram(args) => diagram::run(args),
        Command::Fisher(args) => fisher::run(args),
        Command::Simulate(args) => simulate::run(args),
        Command::Sweep(args) => sweep::run(args),
        Command::Report(args) => report::run(args),
    }
}

/// Writes all files under `out_dir`, creating directories as needed. If any
/// write fails, every file written by this call is removed again.
pub(crate) fn write_outputs(
    out_dir: &Path,
    files: &[(PathBuf, String)],
) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::User(anyhow::anyhow!("creating {}: {e}", out_dir.display())))?;
    let mut written: Vec<PathBuf> = Vec::with_capacity(files.len());
    for (rel, contents) in files {
        let path = out_dir.join(rel);
        let attempt = || -> std::io::Result<()> {
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, contents)
        };
        if let Err(e) = attempt() {
            for p in &written {
                let _ = std::fs::remove_file(p);
            }
            return Err(anyhow::Error::new(e)
                .context(format!("writing {}", path.display())))
            .internal_err();
        }
        written.push(path);
    }
    Ok(written)
}

/// Trace files in a directory, sorted by name for reproducible ordering.
pub(crate) fn trace_files_sorted(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut files = Vec::new();
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CliError::User(anyhow::anyhow!("reading {}: {e}", dir.display())))?;
    for entry in entries {
        let entry = entry.user_err()?;
        let path = entry.path();
        if path.is_file() && crate::tracefile::TraceFormat::from_path(&path).is_some() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}
