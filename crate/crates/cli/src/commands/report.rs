use std::fmt::Write as _;
use std::path::PathBuf;

use serde_json::json;

use crate::cli::ReportArgs;
use crate::manifest::RunManifest;
use crate::outputs::{read_json_file, DiagramFile, FisherFile};
use crate::{CliError, ResultExt};

pub fn run(args: &ReportArgs) -> Result<(), CliError> {
    let diagram: DiagramFile = read_json_file(&args.diagram).user_err()?;
    let fisher: FisherFile = read_json_file(&args.fisher).user_err()?;

    let mut manifest = RunManifest::new(
        "report",
        json!({
            "diagram": args.diagram.display().to_string(),
            "fisher": args.fisher.display().to_string(),
        }),
    );
    manifest.add_input(&args.diagram).user_err()?;
    manifest.add_input(&args.fisher).user_err()?;

    if fisher.hub != diagram.hub {
        eprintln!(
            "warning: fisher curve was computed for hub {} but the diagram names hub {}",
            fisher.hub, diagram.hub
        );
    }
    let peak = fisher
        .fisher
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);

    let mut summary = String::new();
    let _ = writeln!(
        summary,
        "interaction diagram ({}, {} game{})",
        diagram.direction,
        diagram.games.len(),
        if diagram.games.len() == 1 { "" } else { "s" }
    );
    let _ = writeln!(
        summary,
        "  hub: agent {}{}",
        diagram.hub,
        if diagram.hub_tiebreak_used {
            " (tie-break applied)"
        } else {
            ""
        }
    );
    // Map keys are strings; order them as agent numbers for the report.
    let mut incoming: Vec<(u64, usize)> = diagram
        .incoming
        .iter()
        .map(|(j, c)| (j.parse().unwrap_or(u64::MAX), *c))
        .collect();
    incoming.sort_unstable();
    let incoming_line = incoming
        .iter()
        .map(|(j, c)| format!("{j}:{c}"))
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(summary, "  incoming links: {incoming_line}");
    let _ = writeln!(
        summary,
        "fisher sweep over {} ({} grid points, beta = {})",
        fisher.parameter,
        fisher.grid.len(),
        fisher.beta
    );
    let _ = writeln!(
        summary,
        "  theta_star = {} (hub {}, peak fisher = {peak})",
        fisher.theta_star, fisher.hub
    );

    let mut incoming_csv = String::from("agent,incoming\n");
    for (j, c) in &incoming {
        let _ = writeln!(incoming_csv, "{j},{c}");
    }

    let files = vec![
        (PathBuf::from("summary.txt"), summary.clone()),
        (PathBuf::from("incoming.csv"), incoming_csv),
        (PathBuf::from("fisher.csv"), fisher.to_plot_csv()),
    ];
    let written = super::write_outputs(&args.out, &files)?;
    for p in &written {
        manifest.record_output(p);
    }
    manifest.write(&args.out).internal_err()?;

    print!("{summary}");
    Ok(())
}
