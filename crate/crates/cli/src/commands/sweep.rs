use std::path::PathBuf;

use serde_json::json;

use crate::cli::SweepArgs;
use crate::manifest::RunManifest;
use crate::scenario::ScenarioFile;
use crate::tracefile::write_csv;
use crate::{CliError, ResultExt};

pub fn run(args: &SweepArgs) -> Result<(), CliError> {
    let file = ScenarioFile::load(&args.config).user_err()?;
    let cfg = file.into_sweep(args.seed).user_err()?;

    let mut manifest = RunManifest::new(
        "sweep",
        json!({
            "config": args.config.display().to_string(),
            "theta_grid": cfg.grid.thetas(),
            "games_per_theta": cfg.games_per_theta,
            "cycles": cfg.scenario.cycles,
            "label": cfg.grid.label(),
        }),
    )
    .with_seed(args.seed);
    manifest.add_input(&args.config).user_err()?;

    let results = interflow_core::sweep(&cfg).user_err()?;

    let mut files: Vec<(PathBuf, String)> = Vec::new();
    for (theta, games) in &results {
        let group = format!("theta={theta}");
        for (gi, game) in games.iter().enumerate() {
            let mut csv = Vec::new();
            write_csv(game, &mut csv).internal_err()?;
            files.push((
                PathBuf::from(&group).join(format!("game_{gi:03}.csv")),
                String::from_utf8(csv).expect("csv output is utf-8"),
            ));
        }
    }

    let written = super::write_outputs(&args.out, &files)?;
    for p in &written {
        manifest.record_output(p);
    }
    manifest.write(&args.out).internal_err()?;

    println!(
        "wrote {} traces into {} theta groups under {}",
        written.len(),
        results.len(),
        args.out.display()
    );
    Ok(())
}
