use std::path::PathBuf;

use interflow_core::network::{build_diagram, te_matrix, ResponderTable, TEMatrix};
use interflow_core::{EstimatorConfig, SymbolizerConfig};
use serde_json::json;

use crate::cli::DiagramArgs;
use crate::manifest::RunManifest;
use crate::outputs::{read_json_file, to_json_string, DiagramFile, TeMatrixFile};
use crate::tracefile::parse_trace_file;
use crate::{CliError, ResultExt};

pub fn run(args: &DiagramArgs) -> Result<(), CliError> {
    let is_json = |p: &PathBuf| p.extension().and_then(|e| e.to_str()) == Some("json");
    let json_count = args.inputs.iter().filter(|p| is_json(p)).count();
    if json_count != 0 && json_count != args.inputs.len() {
        return Err(CliError::user(
            "inputs mix matrix JSON files and trace files; pass one kind",
        ));
    }
    let from_matrices = json_count == args.inputs.len();

    let mut manifest = RunManifest::new(
        "diagram",
        json!({
            "epsilon": args.sym.epsilon,
            "sectors": args.sym.sectors,
            "k": args.est.k,
            "direction": format!("{}", interflow_core::Direction::from(args.direction)),
            "from_matrices": from_matrices,
            "inputs": args.inputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        }),
    );

    let mut matrices: Vec<TEMatrix> = Vec::with_capacity(args.inputs.len());
    for path in &args.inputs {
        manifest.add_input(path).user_err()?;
        if from_matrices {
            let file: TeMatrixFile = read_json_file(path).user_err()?;
            matrices.push(file.into_matrix().user_err()?);
        } else {
            let sym = SymbolizerConfig::new(args.sym.epsilon, args.sym.sectors).user_err()?;
            let est = EstimatorConfig::new(args.est.k as usize).user_err()?;
            let trace = parse_trace_file(path, args.format.map(Into::into)).user_err()?;
            matrices.push(te_matrix(&trace, &sym, &est, args.direction.into()).user_err()?);
        }
    }

    let table = ResponderTable::from_matrices(&matrices).user_err()?;
    if table.game_count() < 3 {
        eprintln!(
            "warning: only {} game(s); a responder mode over fewer than 3 games is weak evidence",
            table.game_count()
        );
    }
    let diagram = build_diagram(&table, &matrices).user_err()?;
    let file = DiagramFile::from_diagram(&diagram);

    let files = vec![(
        PathBuf::from("diagram.json"),
        to_json_string(&file).internal_err()?,
    )];
    let written = super::write_outputs(&args.out, &files)?;
    for p in &written {
        manifest.record_output(p);
    }
    manifest.write(&args.out).internal_err()?;

    println!("hub = {}", diagram.hub());
    Ok(())
}
