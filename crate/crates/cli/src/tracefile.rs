//! Reading and writing positional trace files.
//!
//! One game per file, in either of two row-per-sample formats:
//!
//! - CSV with a mandatory header: `cycle,side,index,x,y`
//! - JSONL: one object per sample with the same fields
//!
//! `side` is `L` (team X), `R` (team Y) or `B` (ball); `index` is the agent
//! number 2..=11 and must be empty (or absent) exactly for ball rows; `x`
//! and `y` are decimal meters. Rows may appear in any order; the parsed
//! trace is always in increasing cycle order. Cycle labels only order the
//! samples, so a rewritten file numbers them 0..N-1.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, Write};
use std::path::Path;

use interflow_core::trace::{AgentIndex, EntityId, GameTrace, Position, Team, TraceError};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum TraceFileError {
    #[error("line {line}: malformed row: {reason}")]
    MalformedRow { line: usize, reason: String },
    #[error("entity {entity} missing at cycle {cycle}")]
    MissingEntity { entity: String, cycle: u64 },
    #[error("line {line}: duplicate sample for entity {entity} at cycle {cycle}")]
    DuplicateSample {
        entity: String,
        cycle: u64,
        line: usize,
    },
    #[error("line {line}: roster violation: {detail}")]
    RosterViolation { line: usize, detail: String },
    #[error("trace has {cycles} cycle(s), need at least 2")]
    TooFewCycles { cycles: usize },
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Supported trace encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceFormat {
    Csv,
    Jsonl,
}

impl TraceFormat {
    /// Infers the format from a file extension (`.csv` / `.jsonl`).
    pub fn from_path(path: &Path) -> Option<TraceFormat> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => Some(TraceFormat::Csv),
            Some("jsonl") => Some(TraceFormat::Jsonl),
            _ => None,
        }
    }
}

const CSV_HEADER: &str = "cycle,side,index,x,y";

#[derive(Debug, Serialize, Deserialize)]
struct JsonRow {
    cycle: u64,
    side: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    index: Option<u8>,
    x: f64,
    y: f64,
}

fn side_letter(entity: EntityId) -> &'static str {
    match entity {
        EntityId::Agent { team: Team::X, .. } => "L",
        EntityId::Agent { team: Team::Y, .. } => "R",
        EntityId::Ball => "B",
    }
}

fn entity_from_parts(
    line: usize,
    side: &str,
    index: Option<u8>,
) -> Result<EntityId, TraceFileError> {
    let team = match side {
        "L" => Some(Team::X),
        "R" => Some(Team::Y),
        "B" => None,
        other => {
            return Err(TraceFileError::MalformedRow {
                line,
                reason: format!("unknown side {other:?}, expected L, R or B"),
            })
        }
    };
    match (team, index) {
        (None, None) => Ok(EntityId::Ball),
        (None, Some(_)) => Err(TraceFileError::MalformedRow {
            line,
            reason: "ball rows must leave the index empty".into(),
        }),
        (Some(_), None) => Err(TraceFileError::MalformedRow {
            line,
            reason: "agent rows need an index".into(),
        }),
        (Some(team), Some(i)) => match AgentIndex::new(i) {
            Ok(index) => Ok(EntityId::agent(team, index)),
            Err(_) => Err(TraceFileError::RosterViolation {
                line,
                detail: format!("agent index {i} outside 2..=11"),
            }),
        },
    }
}

fn check_finite(line: usize, name: &str, v: f64) -> Result<f64, TraceFileError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(TraceFileError::MalformedRow {
            line,
            reason: format!("{name} must be finite, got {v}"),
        })
    }
}

struct RowAccumulator {
    cycles: BTreeSet<u64>,
    samples: BTreeMap<EntityId, BTreeMap<u64, Position>>,
}

impl RowAccumulator {
    fn new() -> Self {
        RowAccumulator {
            cycles: BTreeSet::new(),
            samples: BTreeMap::new(),
        }
    }

    fn push(
        &mut self,
        line: usize,
        cycle: u64,
        entity: EntityId,
        pos: Position,
    ) -> Result<(), TraceFileError> {
        self.cycles.insert(cycle);
        let per_cycle = self.samples.entry(entity).or_default();
        if per_cycle.insert(cycle, pos).is_some() {
            return Err(TraceFileError::DuplicateSample {
                entity: entity.to_string(),
                cycle,
                line,
            });
        }
        Ok(())
    }

    fn finish(self, game_id: &str) -> Result<GameTrace, TraceFileError> {
        if self.cycles.len() < 2 {
            return Err(TraceFileError::TooFewCycles {
                cycles: self.cycles.len(),
            });
        }
        let mut entities: BTreeMap<EntityId, Vec<Position>> = BTreeMap::new();
        for entity in EntityId::full_roster() {
            let per_cycle = self.samples.get(&entity);
            let mut series = Vec::with_capacity(self.cycles.len());
            for &cycle in &self.cycles {
                match per_cycle.and_then(|m| m.get(&cycle)) {
                    Some(pos) => series.push(*pos),
                    None => {
                        return Err(TraceFileError::MissingEntity {
                            entity: entity.to_string(),
                            cycle,
                        })
                    }
                }
            }
            entities.insert(entity, series);
        }
        Ok(GameTrace::new(game_id, entities)?)
    }
}

/// Parses one game from a character stream.
pub fn parse_trace<R: BufRead>(
    reader: R,
    format: TraceFormat,
    game_id: &str,
) -> Result<GameTrace, TraceFileError> {
    match format {
        TraceFormat::Csv => parse_csv(reader, game_id),
        TraceFormat::Jsonl => parse_jsonl(reader, game_id),
    }
}

fn parse_csv<R: BufRead>(reader: R, game_id: &str) -> Result<GameTrace, TraceFileError> {
    let mut acc = RowAccumulator::new();
    let mut lines = reader.lines().enumerate();
    match lines.next() {
        Some((_, Ok(header))) if header.trim_end() == CSV_HEADER => {}
        Some((_, Ok(header))) => {
            return Err(TraceFileError::MalformedRow {
                line: 1,
                reason: format!("expected header {CSV_HEADER:?}, got {:?}", header.trim_end()),
            })
        }
        Some((_, Err(e))) => return Err(e.into()),
        None => return Err(TraceFileError::TooFewCycles { cycles: 0 }),
    }
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line?;
        let row = line.trim_end();
        if row.is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 5 {
            return Err(TraceFileError::MalformedRow {
                line: line_no,
                reason: format!("expected 5 fields, got {}", fields.len()),
            });
        }
        let cycle: u64 = fields[0].parse().map_err(|e| TraceFileError::MalformedRow {
            line: line_no,
            reason: format!("bad cycle {:?}: {e}", fields[0]),
        })?;
        let index = if fields[2].is_empty() {
            None
        } else {
            Some(
                fields[2]
                    .parse::<u8>()
                    .map_err(|e| TraceFileError::MalformedRow {
                        line: line_no,
                        reason: format!("bad index {:?}: {e}", fields[2]),
                    })?,
            )
        };
        let entity = entity_from_parts(line_no, fields[1], index)?;
        let parse_coord = |name: &str, field: &str| -> Result<f64, TraceFileError> {
            let v: f64 = field.parse().map_err(|e| TraceFileError::MalformedRow {
                line: line_no,
                reason: format!("bad {name} {field:?}: {e}"),
            })?;
            check_finite(line_no, name, v)
        };
        let x = parse_coord("x", fields[3])?;
        let y = parse_coord("y", fields[4])?;
        acc.push(line_no, cycle, entity, Position::new(x, y))?;
    }
    acc.finish(game_id)
}

fn parse_jsonl<R: BufRead>(reader: R, game_id: &str) -> Result<GameTrace, TraceFileError> {
    let mut acc = RowAccumulator::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let row: JsonRow =
            serde_json::from_str(&line).map_err(|e| TraceFileError::MalformedRow {
                line: line_no,
                reason: e.to_string(),
            })?;
        let entity = entity_from_parts(line_no, &row.side, row.index)?;
        check_finite(line_no, "x", row.x)?;
        check_finite(line_no, "y", row.y)?;
        acc.push(line_no, row.cycle, entity, Position::new(row.x, row.y))?;
    }
    acc.finish(game_id)
}

/// Writes a trace in the CSV format, cycles renumbered 0..N-1, entities in
/// a fixed order within each cycle.
pub fn write_csv<W: Write>(trace: &GameTrace, mut w: W) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    let entities: Vec<(EntityId, &[Position])> = trace.entities().collect();
    for cycle in 0..trace.cycles() {
        for (entity, series) in &entities {
            let pos = series[cycle];
            let index = entity
                .index()
                .map(|i| i.get().to_string())
                .unwrap_or_default();
            writeln!(
                w,
                "{cycle},{},{index},{},{}",
                side_letter(*entity),
                pos.x,
                pos.y
            )?;
        }
    }
    Ok(())
}

/// Writes a trace as JSONL, same ordering as [`write_csv`].
pub fn write_jsonl<W: Write>(trace: &GameTrace, mut w: W) -> std::io::Result<()> {
    let entities: Vec<(EntityId, &[Position])> = trace.entities().collect();
    for cycle in 0..trace.cycles() {
        for (entity, series) in &entities {
            let pos = series[cycle];
            let row = JsonRow {
                cycle: cycle as u64,
                side: side_letter(*entity).to_string(),
                index: entity.index().map(|i| i.get()),
                x: pos.x,
                y: pos.y,
            };
            let line = serde_json::to_string(&row).expect("plain struct serializes");
            writeln!(w, "{line}")?;
        }
    }
    Ok(())
}

/// Game id for a trace file: the file stem, prefixed with the sweep
/// subdirectory name when the file sits in a `theta=<value>` directory, so
/// games from different sweep points never collide.
pub fn game_id_for_path(path: &Path) -> String {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("game")
        .to_string();
    let parent = path
        .parent()
        .and_then(|p| p.file_name())
        .and_then(|s| s.to_str());
    match parent {
        Some(dir) if dir.starts_with("theta=") => format!("{dir}_{stem}"),
        _ => stem,
    }
}

/// Opens, sniffs (unless overridden) and parses a trace file.
pub fn parse_trace_file(
    path: &Path,
    format: Option<TraceFormat>,
) -> Result<GameTrace, TraceFileError> {
    let format = format
        .or_else(|| TraceFormat::from_path(path))
        .unwrap_or(TraceFormat::Csv);
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    parse_trace(reader, format, &game_id_for_path(path))
}
