use std::path::PathBuf;

use interflow_core::simulate_match;
use serde_json::json;

use crate::cli::SimulateArgs;
use crate::manifest::RunManifest;
use crate::scenario::ScenarioFile;
use crate::tracefile::write_csv;
use crate::{CliError, ResultExt};

pub fn run(args: &SimulateArgs) -> Result<(), CliError> {
    let file = ScenarioFile::load(&args.config).user_err()?;
    let scenario = file.into_scenario().user_err()?;

    let mut manifest = RunManifest::new(
        "simulate",
        json!({
            "config": args.config.display().to_string(),
            "cycles": scenario.cycles,
            "theta": scenario.theta,
            "theta_critical": scenario.theta_critical,
        }),
    )
    .with_seed(args.seed);
    manifest.add_input(&args.config).user_err()?;

    let trace = simulate_match(&scenario, args.seed).user_err()?;
    let mut csv = Vec::new();
    write_csv(&trace, &mut csv).internal_err()?;
    let csv = String::from_utf8(csv).expect("csv output is utf-8");

    let rel = PathBuf::from(format!("{}.csv", trace.game_id()));
    let written = super::write_outputs(&args.out, &[(rel, csv)])?;
    for p in &written {
        manifest.record_output(p);
    }
    manifest.write(&args.out).internal_err()?;

    println!("wrote {}", written[0].display());
    Ok(())
}
