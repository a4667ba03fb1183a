use std::collections::BTreeSet;
use std::path::PathBuf;

use interflow_core::network::te_matrix;
use interflow_core::{EstimatorConfig, SymbolizerConfig};
use serde_json::json;

use crate::cli::TeArgs;
use crate::manifest::RunManifest;
use crate::outputs::{to_json_string, TeMatrixFile};
use crate::tracefile::parse_trace_file;
use crate::{CliError, ResultExt};

pub fn run(args: &TeArgs) -> Result<(), CliError> {
    let sym = SymbolizerConfig::new(args.sym.epsilon, args.sym.sectors).user_err()?;
    let est = EstimatorConfig::new(args.est.k as usize).user_err()?;
    let direction = args.direction.into();

    let mut manifest = RunManifest::new(
        "te",
        json!({
            "epsilon": args.sym.epsilon,
            "sectors": args.sym.sectors,
            "k": args.est.k,
            "direction": format!("{direction}"),
            "traces": args.traces.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        }),
    );

    let mut files: Vec<(PathBuf, String)> = Vec::with_capacity(args.traces.len());
    let mut seen = BTreeSet::new();
    for path in &args.traces {
        manifest.add_input(path).user_err()?;
        let trace = parse_trace_file(path, args.format.map(Into::into)).user_err()?;
        if !seen.insert(trace.game_id().to_string()) {
            return Err(CliError::user(format!(
                "duplicate game id {:?} (from {})",
                trace.game_id(),
                path.display()
            )));
        }
        let matrix = te_matrix(&trace, &sym, &est, direction).user_err()?;
        let file = TeMatrixFile::from_matrix(&matrix);
        files.push((
            PathBuf::from(format!("te_{}.json", file.game_id)),
            to_json_string(&file).internal_err()?,
        ));
    }

    let written = super::write_outputs(&args.out, &files)?;
    for p in &written {
        manifest.record_output(p);
    }
    manifest.write(&args.out).internal_err()?;
    Ok(())
}
