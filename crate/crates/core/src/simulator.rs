//! Synthetic game generation with known coupling structure and a known
//! critical parameter.
//!
//! Every agent performs a random direction walk on eight canonical headings
//! (the centers of the default symbolizer sectors). A coupling (i, j, c)
//! makes target-team agent j copy, with probability c, the heading that
//! source-team agent i used on the previous cycle; a target with several
//! couplings picks one source uniformly each cycle. Everything else is
//! independent, so transfer entropy concentrates on the coupled pairs.
//!
//! One designated agent can follow a pitchfork-shaped step-magnitude family
//! in the control parameter theta: below the critical point its steps stay
//! around a small base magnitude (mostly under the default stationary
//! threshold), above it the magnitude jumps to `base +/- sqrt(theta -
//! theta_c)` with the branch resampled every cycle. The symbol distribution
//! of that agent changes abruptly at theta_c, which is what the Fisher sweep
//! is meant to pick up.
//!
//! Generation is a pure function of (config, seed). Sweeps derive one seed
//! per (theta index, game index) from the base seed, so any single game can
//! be regenerated in isolation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::fisher::SweepGrid;
use crate::math;
use crate::trace::{AgentIndex, EntityId, GameTrace, Position, Team, AGENTS_PER_TEAM};

/// Number of canonical walk headings.
pub const DIRECTION_COUNT: usize = 8;

/// Base step magnitude of the pitchfork agent, meters. Chosen together with
/// the noise half-width so that below the critical point the magnitude
/// straddles the default stationary threshold of 0.05 m.
pub const PITCHFORK_BASE_STEP: f64 = 0.03;

/// Half-width of the uniform noise on the pitchfork magnitude, meters.
pub const PITCHFORK_NOISE_HALF_WIDTH: f64 = 0.04;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimulatorError {
    #[error("coupling strength {strength} for ({source_agent} -> {target_agent}) outside [0, 1]")]
    InvalidStrength {
        source_agent: AgentIndex,
        target_agent: AgentIndex,
        strength: f64,
    },
    #[error("duplicate coupling for pair ({source_agent} -> {target_agent})")]
    DuplicateCoupling {
        source_agent: AgentIndex,
        target_agent: AgentIndex,
    },
    #[error("scenario has {cycles} cycles, need at least 100")]
    TooFewCycles { cycles: usize },
    #[error("{name} must be finite and > 0, got {value}")]
    InvalidStep { name: &'static str, value: f64 },
    #[error("{name} must be finite, got {value}")]
    NonFiniteParameter { name: &'static str, value: f64 },
    #[error("games_per_theta must be at least 1")]
    NoGamesPerTheta,
}

/// One directed coupling: target-team agent `target` copies source-team
/// agent `source`'s previous heading with probability `strength`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    pub source: AgentIndex,
    pub target: AgentIndex,
    pub strength: f64,
}

/// Scenario parameters for one synthetic game.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    /// Directed couplings; a pair (source, target) may appear once, but one
    /// target may receive couplings from several sources.
    pub couplings: Vec<Coupling>,
    /// Step length of free-walking agents, meters.
    pub free_agent_step: f64,
    /// Cycles per game, N.
    pub cycles: usize,
    /// Control parameter value.
    pub theta: f64,
    /// Critical value of the control parameter.
    pub theta_critical: f64,
    /// Ball step length, meters.
    pub ball_step: f64,
    /// Target-team agent whose step magnitude follows the pitchfork family
    /// in theta; `None` disables the theta dependence entirely.
    pub critical_agent: Option<AgentIndex>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            couplings: Vec::new(),
            free_agent_step: 0.3,
            cycles: 6000,
            theta: 0.0,
            theta_critical: 0.5,
            ball_step: 0.5,
            critical_agent: None,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<(), SimulatorError> {
        for (n, c) in self.couplings.iter().enumerate() {
            if !(0.0..=1.0).contains(&c.strength) || !c.strength.is_finite() {
                return Err(SimulatorError::InvalidStrength {
                    source_agent: c.source,
                    target_agent: c.target,
                    strength: c.strength,
                });
            }
            if self.couplings[..n]
                .iter()
                .any(|o| o.source == c.source && o.target == c.target)
            {
                return Err(SimulatorError::DuplicateCoupling {
                    source_agent: c.source,
                    target_agent: c.target,
                });
            }
        }
        if self.cycles < 100 {
            return Err(SimulatorError::TooFewCycles {
                cycles: self.cycles,
            });
        }
        for (name, value) in [
            ("free_agent_step", self.free_agent_step),
            ("ball_step", self.ball_step),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(SimulatorError::InvalidStep { name, value });
            }
        }
        for (name, value) in [("theta", self.theta), ("theta_critical", self.theta_critical)] {
            if !value.is_finite() {
                return Err(SimulatorError::NonFiniteParameter { name, value });
            }
        }
        Ok(())
    }
}

/// Parameters of a full sweep: the scenario template replayed across a grid
/// of theta values with several games per grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub scenario: ScenarioConfig,
    pub grid: SweepGrid,
    pub games_per_theta: usize,
    pub seed: u64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SimulatorError> {
        self.scenario.validate()?;
        if self.games_per_theta == 0 {
            return Err(SimulatorError::NoGamesPerTheta);
        }
        Ok(())
    }
}

/// Deterministic per-game seed: two SplitMix64 rounds folding the theta and
/// game indices into the base seed. Regenerating a single game only needs
/// (base seed, theta index, game index).
pub fn derive_seed(base: u64, theta_index: usize, game_index: usize) -> u64 {
    let s = math::splitmix64(base ^ (theta_index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    math::splitmix64(s ^ (game_index as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F))
}

#[inline]
fn next_f64(rng: &mut ChaCha8Rng) -> f64 {
    // 53 uniform mantissa bits in [0, 1).
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[inline]
fn next_heading(rng: &mut ChaCha8Rng) -> usize {
    (rng.next_u64() % DIRECTION_COUNT as u64) as usize
}

#[inline]
fn next_sign(rng: &mut ChaCha8Rng) -> f64 {
    if rng.next_u64() & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

struct WalkState {
    position: Vec<Position>,
}

/// Simulates one game. Bit-identical output for identical (config, seed).
pub fn simulate_match(cfg: &ScenarioConfig, seed: u64) -> Result<GameTrace, SimulatorError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cfg.cycles;

    // Unit vectors of the eight canonical headings (sector centers).
    let headings: Vec<(f64, f64)> = (0..DIRECTION_COUNT)
        .map(|m| {
            let angle = (m as f64 + 0.5) * math::TAU / DIRECTION_COUNT as f64;
            (math::cos(angle), math::sin(angle))
        })
        .collect();

    // Couplings grouped per target roster slot.
    let mut couplings_for: [Vec<Coupling>; AGENTS_PER_TEAM] = Default::default();
    for c in &cfg.couplings {
        couplings_for[c.target.roster_slot()].push(*c);
    }

    let pitchfork_branch = if cfg.theta > cfg.theta_critical {
        math::sqrt(cfg.theta - cfg.theta_critical)
    } else {
        0.0
    };

    // Fixed starting formation: the two teams on mirrored columns, ball at
    // the center. Absolute positions never matter downstream.
    let mut ball = WalkState {
        position: alloc::vec![Position::new(0.0, 0.0)],
    };
    let spawn = |team_x: bool, slot: usize| {
        let x = if team_x { -5.0 } else { 5.0 };
        Position::new(x, 3.0 * slot as f64 - 13.5)
    };
    let mut team_x: Vec<WalkState> = (0..AGENTS_PER_TEAM)
        .map(|s| WalkState {
            position: alloc::vec![spawn(true, s)],
        })
        .collect();
    let mut team_y: Vec<WalkState> = (0..AGENTS_PER_TEAM)
        .map(|s| WalkState {
            position: alloc::vec![spawn(false, s)],
        })
        .collect();

    let source_team = Team::Y;
    let target_team = Team::X;
    let mut prev_source_heading = [0usize; AGENTS_PER_TEAM];
    let mut cur_source_heading = [0usize; AGENTS_PER_TEAM];

    for t in 0..n - 1 {
        // Draw order per transition: ball, source team ascending, target
        // team ascending. Keeping the order fixed keeps runs reproducible.
        let d = next_heading(&mut rng);
        let last = *ball.position.last().expect("nonempty");
        ball.position.push(Position::new(
            last.x + cfg.ball_step * headings[d].0,
            last.y + cfg.ball_step * headings[d].1,
        ));

        for (slot, agent) in team_y.iter_mut().enumerate() {
            let d = next_heading(&mut rng);
            cur_source_heading[slot] = d;
            let last = *agent.position.last().expect("nonempty");
            agent.position.push(Position::new(
                last.x + cfg.free_agent_step * headings[d].0,
                last.y + cfg.free_agent_step * headings[d].1,
            ));
        }

        for (slot, agent) in team_x.iter_mut().enumerate() {
            let index = AgentIndex::from_roster_slot(slot);
            let couplings = &couplings_for[slot];
            let d = if couplings.is_empty() {
                next_heading(&mut rng)
            } else {
                let pick = if couplings.len() == 1 {
                    0
                } else {
                    (rng.next_u64() % couplings.len() as u64) as usize
                };
                let c = couplings[pick];
                if t >= 1 && next_f64(&mut rng) < c.strength {
                    prev_source_heading[c.source.roster_slot()]
                } else {
                    next_heading(&mut rng)
                }
            };
            let step = if cfg.critical_agent == Some(index) {
                let noise = (2.0 * next_f64(&mut rng) - 1.0) * PITCHFORK_NOISE_HALF_WIDTH;
                PITCHFORK_BASE_STEP + next_sign(&mut rng) * pitchfork_branch + noise
            } else {
                cfg.free_agent_step
            };
            let last = *agent.position.last().expect("nonempty");
            agent.position.push(Position::new(
                last.x + step * headings[d].0,
                last.y + step * headings[d].1,
            ));
        }

        prev_source_heading = cur_source_heading;
    }

    let mut entities: BTreeMap<EntityId, Vec<Position>> = BTreeMap::new();
    entities.insert(EntityId::Ball, ball.position);
    for (slot, agent) in team_x.into_iter().enumerate() {
        entities.insert(
            EntityId::agent(target_team, AgentIndex::from_roster_slot(slot)),
            agent.position,
        );
    }
    for (slot, agent) in team_y.into_iter().enumerate() {
        entities.insert(
            EntityId::agent(source_team, AgentIndex::from_roster_slot(slot)),
            agent.position,
        );
    }

    let game_id = format!("sim-{seed:016x}");
    Ok(GameTrace::new(game_id, entities).expect("simulator emits a complete roster"))
}

/// Generates `games_per_theta` games at every grid point.
///
/// The scenario template's `theta` is overridden by each grid value; game
/// seeds come from [`derive_seed`].
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<(f64, Vec<GameTrace>)>, SimulatorError> {
    cfg.validate()?;
    let mut result = Vec::with_capacity(cfg.grid.len());
    for (ti, &theta) in cfg.grid.thetas().iter().enumerate() {
        let mut scenario = cfg.scenario.clone();
        scenario.theta = theta;
        let mut games = Vec::with_capacity(cfg.games_per_theta);
        for gi in 0..cfg.games_per_theta {
            games.push(simulate_match(&scenario, derive_seed(cfg.seed, ti, gi))?);
        }
        result.push((theta, games));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::{conditional_transfer_entropy, EstimatorConfig};
    use crate::network::{responder_per_game, te_matrix, Direction};
    use crate::trace::{compute_increments, symbolize, SymbolizerConfig};
    use alloc::vec;

    fn agent(i: u8) -> AgentIndex {
        AgentIndex::new(i).unwrap()
    }

    fn coupled_scenario(source: u8, target: u8, strength: f64, cycles: usize) -> ScenarioConfig {
        ScenarioConfig {
            couplings: vec![Coupling {
                source: agent(source),
                target: agent(target),
                strength,
            }],
            cycles,
            ..ScenarioConfig::default()
        }
    }

    /// TE from source-team agent i to target-team agent j of one trace.
    fn pair_te(trace: &GameTrace, i: u8, j: u8, k: usize) -> f64 {
        let sym_cfg = SymbolizerConfig::default();
        let incs = compute_increments(trace);
        let sym = |e: EntityId| symbolize(&incs[&e], &sym_cfg);
        let x = sym(EntityId::agent(Team::X, agent(j)));
        let y = sym(EntityId::agent(Team::Y, agent(i)));
        let b = sym(EntityId::Ball);
        conditional_transfer_entropy(&x, &y, &b, &EstimatorConfig::new(k).unwrap()).unwrap()
    }

    #[test]
    fn identical_seed_gives_bit_identical_traces() {
        let cfg = coupled_scenario(3, 5, 1.0, 200);
        let a = simulate_match(&cfg, 99).unwrap();
        let b = simulate_match(&cfg, 99).unwrap();
        assert_eq!(a, b);
        let c = simulate_match(&cfg, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sweep_produces_expected_layout_and_is_reproducible() {
        let cfg = SweepConfig {
            scenario: ScenarioConfig {
                cycles: 120,
                ..ScenarioConfig::default()
            },
            grid: SweepGrid::new(vec![0.1, 0.2, 0.3, 0.4, 0.5], "theta").unwrap(),
            games_per_theta: 3,
            seed: 7,
        };
        let a = sweep(&cfg).unwrap();
        assert_eq!(a.len(), 5);
        assert!(a.iter().all(|(_, games)| games.len() == 3));
        assert_eq!(a.iter().map(|(_, g)| g.len()).sum::<usize>(), 15);

        let b = sweep(&cfg).unwrap();
        assert_eq!(a, b);

        // Sub-seed reproduction: theta index 2, game 1 regenerated alone.
        let mut scenario = cfg.scenario.clone();
        scenario.theta = 0.3;
        let lone = simulate_match(&scenario, derive_seed(7, 2, 1)).unwrap();
        assert_eq!(lone, a[2].1[1]);
    }

    #[test]
    fn config_validation_rejects_bad_scenarios() {
        let mut cfg = coupled_scenario(3, 5, 1.5, 200);
        assert!(matches!(
            cfg.validate(),
            Err(SimulatorError::InvalidStrength { .. })
        ));
        cfg.couplings[0].strength = 1.0;
        cfg.couplings.push(cfg.couplings[0]);
        assert!(matches!(
            cfg.validate(),
            Err(SimulatorError::DuplicateCoupling { .. })
        ));
        cfg.couplings.pop();
        cfg.cycles = 50;
        assert!(matches!(
            cfg.validate(),
            Err(SimulatorError::TooFewCycles { .. })
        ));
        cfg.cycles = 200;
        assert!(cfg.validate().is_ok());
        // Several couplings into one target are allowed.
        cfg.couplings.push(Coupling {
            source: agent(4),
            target: agent(5),
            strength: 1.0,
        });
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn full_coupling_dominates_its_row() {
        // With strength 1 the coupled target should receive the row-maximal
        // TE from its source in essentially every seeded game.
        let cfg = coupled_scenario(3, 5, 1.0, 6000);
        let est = EstimatorConfig::new(1).unwrap();
        let sym = SymbolizerConfig::default();
        let mut hits = 0;
        let runs = 100;
        for seed in 0..runs {
            let trace = simulate_match(&cfg, seed).unwrap();
            let m = te_matrix(&trace, &sym, &est, Direction::YToX).unwrap();
            if responder_per_game(&m, agent(3)) == agent(5) {
                hits += 1;
            }
        }
        assert!(hits >= 95, "coupled pair won the row in {hits}/{runs} runs");
    }

    #[test]
    fn matrix_entries_equal_independent_estimator_calls() {
        let cfg = coupled_scenario(3, 5, 1.0, 300);
        let trace = simulate_match(&cfg, 21).unwrap();
        let m = te_matrix(
            &trace,
            &SymbolizerConfig::default(),
            &EstimatorConfig::new(1).unwrap(),
            Direction::YToX,
        )
        .unwrap();
        for (i, j) in [(3, 5), (2, 2), (11, 7)] {
            assert_eq!(m.value(agent(i), agent(j)), pair_te(&trace, i, j, 1));
        }
    }

    #[test]
    fn te_is_monotone_in_coupling_strength_on_average() {
        let strengths = [0.25, 0.5, 0.75, 1.0];
        let runs = 50;
        let mut means = [0.0f64; 4];
        for (si, &c) in strengths.iter().enumerate() {
            let cfg = coupled_scenario(3, 5, c, 2000);
            for seed in 0..runs {
                let trace = simulate_match(&cfg, 500 + seed).unwrap();
                means[si] += pair_te(&trace, 3, 5, 1);
            }
            means[si] /= runs as f64;
        }
        assert!(
            means.windows(2).all(|w| w[0] <= w[1]),
            "mean TE not monotone: {means:?}"
        );
    }

    #[test]
    fn uncoupled_scenario_stays_in_null_band() {
        // Calibrate a null band from independent-walk runs, then check that
        // a strengths-zero scenario's whole matrix stays inside it.
        let est = EstimatorConfig::new(1).unwrap();
        let sym = SymbolizerConfig::default();
        let null_cfg = ScenarioConfig {
            cycles: 2000,
            ..ScenarioConfig::default()
        };
        let mut nulls = Vec::new();
        for seed in 0..100 {
            let trace = simulate_match(&null_cfg, 9000 + seed).unwrap();
            nulls.push(pair_te(&trace, 2, 2, 1));
        }
        let mean = nulls.iter().sum::<f64>() / nulls.len() as f64;
        let var = nulls.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
            / (nulls.len() - 1) as f64;
        let band_hi = mean + 8.0 * math::sqrt(var);

        let zero_cfg = ScenarioConfig {
            couplings: vec![Coupling {
                source: agent(3),
                target: agent(5),
                strength: 0.0,
            }],
            cycles: 2000,
            ..ScenarioConfig::default()
        };
        let trace = simulate_match(&zero_cfg, 12345).unwrap();
        let m = te_matrix(&trace, &sym, &est, Direction::YToX).unwrap();
        for i in AgentIndex::all() {
            for j in AgentIndex::all() {
                let v = m.value(i, j);
                assert!(
                    v >= -1e-12 && v <= band_hi,
                    "entry ({i},{j}) = {v} outside null band [0, {band_hi}]"
                );
            }
        }
    }

    #[test]
    fn pitchfork_agent_is_mostly_stationary_below_critical_point() {
        let cfg = ScenarioConfig {
            theta: 0.3,
            critical_agent: Some(agent(5)),
            cycles: 4000,
            ..ScenarioConfig::default()
        };
        let sym_cfg = SymbolizerConfig::default();
        let trace = simulate_match(&cfg, 4).unwrap();
        let incs = compute_increments(&trace);
        let sym = symbolize(&incs[&EntityId::agent(Team::X, agent(5))], &sym_cfg);
        let stationary = sym
            .symbols()
            .iter()
            .filter(|&&s| s == crate::trace::STATIONARY)
            .count() as f64
            / sym.len() as f64;
        // P(|base + noise| <= threshold) = 0.75 for the default constants.
        assert!((stationary - 0.75).abs() < 0.05, "stationary = {stationary}");

        let above = ScenarioConfig {
            theta: 0.7,
            ..cfg.clone()
        };
        let trace = simulate_match(&above, 4).unwrap();
        let incs = compute_increments(&trace);
        let sym = symbolize(&incs[&EntityId::agent(Team::X, agent(5))], &sym_cfg);
        assert!(
            sym.symbols().iter().all(|&s| s != crate::trace::STATIONARY),
            "above the critical point the pitchfork agent always moves"
        );
    }
}
