use std::path::PathBuf;

use interflow_core::network::Direction;
use interflow_core::trace::{compute_increments, symbolize, AgentIndex, EntityId};
use interflow_core::{fisher_curve, SweepGrid, SymbolizerConfig};
use serde_json::json;

use crate::cli::FisherArgs;
use crate::manifest::RunManifest;
use crate::outputs::{round_sig12, to_json_string, FisherFile};
use crate::tracefile::parse_trace_file;
use crate::{CliError, ResultExt};

/// Theta-labeled subdirectories of a sweep, sorted by theta.
fn theta_groups(dir: &std::path::Path) -> Result<Vec<(f64, PathBuf)>, CliError> {
    let mut groups = Vec::new();
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CliError::User(anyhow::anyhow!("reading {}: {e}", dir.display())))?;
    for entry in entries {
        let entry = entry.user_err()?;
        let path = entry.path();
        if !path.is_dir() {
            continue;
        }
        let name = entry.file_name();
        let name = name.to_string_lossy();
        if let Some(value) = name.strip_prefix("theta=") {
            let theta: f64 = value.parse().map_err(|e| {
                CliError::User(anyhow::anyhow!(
                    "cannot parse theta from directory {:?}: {e}",
                    name
                ))
            })?;
            groups.push((theta, path));
        }
    }
    groups.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in groups.windows(2) {
        if w[0].0 >= w[1].0 {
            return Err(CliError::user(format!(
                "duplicate theta value {} in sweep directory",
                w[0].0
            )));
        }
    }
    Ok(groups)
}

pub fn run(args: &FisherArgs) -> Result<(), CliError> {
    let sym = SymbolizerConfig::new(args.sym.epsilon, args.sym.sectors).user_err()?;
    let hub = AgentIndex::new(args.hub).user_err()?;
    let direction: Direction = args.direction.into();
    let hub_entity = EntityId::agent(direction.target_team(), hub);

    let groups = theta_groups(&args.sweep_dir)?;
    let grid = SweepGrid::new(groups.iter().map(|(t, _)| *t).collect(), args.label.clone())
        .user_err()?;

    let mut manifest = RunManifest::new(
        "fisher",
        json!({
            "sweep_dir": args.sweep_dir.display().to_string(),
            "hub": args.hub,
            "beta": args.beta,
            "epsilon": args.sym.epsilon,
            "sectors": args.sym.sectors,
            "direction": format!("{direction}"),
            "label": args.label,
        }),
    );

    let mut ensembles = Vec::with_capacity(groups.len());
    for (theta, group_dir) in &groups {
        let files = super::trace_files_sorted(group_dir)?;
        if files.is_empty() {
            return Err(CliError::user(format!(
                "empty ensemble: no trace files under {} (theta = {theta})",
                group_dir.display()
            )));
        }
        let mut ensemble = Vec::with_capacity(files.len());
        for path in &files {
            manifest.add_input(path).user_err()?;
            let trace = parse_trace_file(path, args.format.map(Into::into)).user_err()?;
            let increments = compute_increments(&trace);
            ensemble.push(symbolize(&increments[&hub_entity], &sym));
        }
        ensembles.push(ensemble);
    }

    let curve = fisher_curve(grid, &ensembles, args.beta, hub).user_err()?;
    let file = FisherFile::from_curve(&curve, args.beta);

    let files = vec![
        (
            PathBuf::from("fisher.json"),
            to_json_string(&file).internal_err()?,
        ),
        (PathBuf::from("fisher.csv"), file.to_plot_csv()),
    ];
    let written = super::write_outputs(&args.out, &files)?;
    for p in &written {
        manifest.record_output(p);
    }
    manifest.write(&args.out).internal_err()?;

    println!("theta_star = {}", round_sig12(curve.theta_star()));
    Ok(())
}
