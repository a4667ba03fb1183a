//! Machine-readable output files: TE matrices, diagrams, Fisher curves.
//!
//! All floating-point values are rounded to 12 significant digits before
//! serialization, so repeated runs with identical inputs produce
//! byte-identical files.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Context;
use interflow_core::network::{Direction, InteractionDiagram, TEMatrix};
use interflow_core::trace::{AgentIndex, AGENTS_PER_TEAM, AGENT_MAX, AGENT_MIN};
use interflow_core::FisherCurve;
use serde::{Deserialize, Serialize};

/// Rounds to 12 significant digits (the serialization precision contract).
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("scientific float reparses")
}

/// Per-game TE matrix file. Rows are source agents, columns target agents,
/// both ordered by the `agents` list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TeMatrixFile {
    pub game_id: String,
    pub direction: String,
    pub agents: Vec<u8>,
    pub values_bits: Vec<Vec<f64>>,
}

impl TeMatrixFile {
    pub fn from_matrix(m: &TEMatrix) -> TeMatrixFile {
        TeMatrixFile {
            game_id: m.game_id().to_string(),
            direction: m.direction().as_str().to_string(),
            agents: (AGENT_MIN..=AGENT_MAX).collect(),
            values_bits: m
                .values()
                .iter()
                .map(|row| row.iter().map(|&v| round_sig12(v)).collect())
                .collect(),
        }
    }

    pub fn into_matrix(self) -> anyhow::Result<TEMatrix> {
        let direction: Direction = self
            .direction
            .parse()
            .map_err(|e: &str| anyhow::anyhow!("{e}"))?;
        let expected: Vec<u8> = (AGENT_MIN..=AGENT_MAX).collect();
        anyhow::ensure!(
            self.agents == expected,
            "matrix file for game {:?} lists agents {:?}, expected {expected:?}",
            self.game_id,
            self.agents
        );
        anyhow::ensure!(
            self.values_bits.len() == AGENTS_PER_TEAM
                && self.values_bits.iter().all(|r| r.len() == AGENTS_PER_TEAM),
            "matrix file for game {:?} is not 10x10",
            self.game_id
        );
        let mut values = [[0.0; AGENTS_PER_TEAM]; AGENTS_PER_TEAM];
        for (i, row) in self.values_bits.iter().enumerate() {
            values[i].copy_from_slice(row);
        }
        Ok(TEMatrix::new(self.game_id, direction, values)?)
    }
}

/// Interaction diagram file: responder map, incoming counts, and the hub.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramFile {
    pub direction: String,
    pub responder: BTreeMap<String, u8>,
    pub incoming: BTreeMap<String, usize>,
    pub hub: u8,
    pub hub_tiebreak_used: bool,
    pub games: Vec<String>,
}

impl DiagramFile {
    pub fn from_diagram(d: &InteractionDiagram) -> DiagramFile {
        DiagramFile {
            direction: d.direction().as_str().to_string(),
            responder: d
                .responder()
                .iter()
                .map(|(i, j)| (i.get().to_string(), j.get()))
                .collect(),
            incoming: d
                .incoming()
                .iter()
                .map(|(j, c)| (j.get().to_string(), *c))
                .collect(),
            hub: d.hub().get(),
            hub_tiebreak_used: d.hub_tiebreak_used(),
            games: d.games().to_vec(),
        }
    }
}

/// Fisher curve file, with a companion `theta,fisher` CSV for plotting.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FisherFile {
    pub parameter: String,
    pub grid: Vec<f64>,
    pub fisher: Vec<f64>,
    pub theta_star: f64,
    pub hub: u8,
    pub beta: f64,
}

impl FisherFile {
    pub fn from_curve(curve: &FisherCurve, beta: f64) -> FisherFile {
        FisherFile {
            parameter: curve.grid().label().to_string(),
            grid: curve.grid().thetas().iter().map(|&t| round_sig12(t)).collect(),
            fisher: curve.values().iter().map(|&v| round_sig12(v)).collect(),
            theta_star: round_sig12(curve.theta_star()),
            hub: curve.hub().get(),
            beta,
        }
    }

    pub fn to_plot_csv(&self) -> String {
        let mut out = String::from("theta,fisher\n");
        for (t, f) in self.grid.iter().zip(&self.fisher) {
            out.push_str(&format!("{t},{f}\n"));
        }
        out
    }
}

pub fn agent_index_from_file(value: u8) -> anyhow::Result<AgentIndex> {
    AgentIndex::new(value).map_err(|e| anyhow::anyhow!("{e}"))
}

/// Serializes a value as pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value).context("serializing output")?;
    s.push('\n');
    Ok(s)
}

pub fn read_json_file<T: for<'de> Deserialize<'de>>(path: &Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}
