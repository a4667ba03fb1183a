//! Scenario and sweep configuration files.
//!
//! A flat TOML file of key-value pairs mirroring the simulator
//! configuration. Scenario keys (all optional unless noted):
//!
//! ```text
//! cycles = 6000              # cycles per game
//! theta = 0.4                # control parameter (required for simulate)
//! theta_critical = 0.5       # critical point of the pitchfork family
//! free_agent_step = 0.3      # step length of free agents, meters
//! ball_step = 0.5            # ball step length, meters
//! critical_agent = 5         # team-X agent with the pitchfork magnitude
//! couplings = [[3, 5, 1.0]]  # [source, target, strength] triples
//! ```
//!
//! A sweep file uses the same scenario keys (ignoring `theta`) plus:
//!
//! ```text
//! theta_grid = [0.30, 0.35, 0.40]   # required, strictly increasing
//! games_per_theta = 10              # required
//! label = "theta"                   # parameter name for outputs
//! ```

use std::path::Path;

use anyhow::Context;
use interflow_core::simulator::{Coupling, ScenarioConfig, SweepConfig};
use interflow_core::trace::AgentIndex;
use interflow_core::SweepGrid;
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub cycles: Option<usize>,
    pub theta: Option<f64>,
    pub theta_critical: Option<f64>,
    pub free_agent_step: Option<f64>,
    pub ball_step: Option<f64>,
    pub critical_agent: Option<u8>,
    pub couplings: Option<Vec<(u8, u8, f64)>>,
    pub theta_grid: Option<Vec<f64>>,
    pub games_per_theta: Option<usize>,
    pub label: Option<String>,
}

impl ScenarioFile {
    pub fn load(path: &Path) -> anyhow::Result<ScenarioFile> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    fn scenario_with_theta(&self, theta: f64) -> anyhow::Result<ScenarioConfig> {
        let defaults = ScenarioConfig::default();
        let couplings = self
            .couplings
            .as_deref()
            .unwrap_or_default()
            .iter()
            .map(|&(source, target, strength)| {
                Ok(Coupling {
                    source: AgentIndex::new(source)
                        .map_err(|e| anyhow::anyhow!("coupling source: {e}"))?,
                    target: AgentIndex::new(target)
                        .map_err(|e| anyhow::anyhow!("coupling target: {e}"))?,
                    strength,
                })
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        let critical_agent = self
            .critical_agent
            .map(|i| AgentIndex::new(i).map_err(|e| anyhow::anyhow!("critical_agent: {e}")))
            .transpose()?;
        let cfg = ScenarioConfig {
            couplings,
            free_agent_step: self.free_agent_step.unwrap_or(defaults.free_agent_step),
            cycles: self.cycles.unwrap_or(defaults.cycles),
            theta,
            theta_critical: self.theta_critical.unwrap_or(defaults.theta_critical),
            ball_step: self.ball_step.unwrap_or(defaults.ball_step),
            critical_agent,
        };
        cfg.validate().map_err(|e| anyhow::anyhow!("{e}"))?;
        Ok(cfg)
    }

    /// Resolves a single-game scenario; `theta` is required here.
    pub fn into_scenario(&self) -> anyhow::Result<ScenarioConfig> {
        let theta = self
            .theta
            .ok_or_else(|| anyhow::anyhow!("missing required key `theta`"))?;
        self.scenario_with_theta(theta)
    }

    /// Resolves a sweep; `theta_grid` and `games_per_theta` are required.
    pub fn into_sweep(&self, seed: u64) -> anyhow::Result<SweepConfig> {
        let thetas = self
            .theta_grid
            .clone()
            .ok_or_else(|| anyhow::anyhow!("missing required key `theta_grid`"))?;
        let games_per_theta = self
            .games_per_theta
            .ok_or_else(|| anyhow::anyhow!("missing required key `games_per_theta`"))?;
        let label = self.label.clone().unwrap_or_else(|| "theta".to_string());
        let grid = SweepGrid::new(thetas, label).map_err(|e| anyhow::anyhow!("theta_grid: {e}"))?;
        let scenario = self.scenario_with_theta(self.theta.unwrap_or(grid.thetas()[0]))?;
        let cfg = SweepConfig {
            scenario,
            grid,
            games_per_theta,
            seed,
        };
        cfg.validate().map_err(|e| anyhow::anyhow!("{e}"))?;
        Ok(cfg)
    }
}
