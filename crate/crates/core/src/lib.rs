//! Interaction networks and critical-parameter selection for multi-agent
//! positional time series.
//!
//! The crate implements a pipeline for two opposing ten-agent teams tracked
//! together with a ball:
//!
//! 1. [`trace`] — positional data model, motion increments, and their
//!    discretization into a stationary-plus-direction-sectors alphabet;
//! 2. [`estimators`] — plug-in conditional transfer entropy between symbol
//!    series, conditioned on the ball, with a brute-force oracle;
//! 3. [`network`] — per-game 10x10 TE matrices, per-source responder
//!    selection, mode aggregation over games, and the interaction diagram
//!    whose hub is the agent with the most incoming links;
//! 4. [`fisher`] — Fisher information of the hub agent's symbol distribution
//!    across a control-parameter sweep, maximized to select the critical
//!    parameter value;
//! 5. [`simulator`] — seeded synthetic games with known couplings and a known
//!    critical point, used as ground truth by the test suites.
//!
//! The crate is `no_std` (with `alloc`); all operations are pure functions
//! of their inputs and every internal collection iterates in a fixed order,
//! so identical inputs produce bit-identical results. File formats, JSON
//! output, and the command line live in the companion `interflow` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod estimators;
pub mod fisher;
mod math;
pub mod network;
pub mod simulator;
pub mod trace;

pub use estimators::{
    brute_force_te_oracle, brute_force_te_unconditioned, conditional_transfer_entropy,
    joint_counts, ContingencyTable, EstimatorConfig, EstimatorError,
};
pub use fisher::{
    estimate_distribution, fisher_curve, fisher_curve_from_distributions, select_theta_star,
    FisherCurve, FisherError, ProbVector, SweepGrid,
};
pub use network::{
    build_diagram, responder_mode, responder_per_game, te_matrix, Direction, InteractionDiagram,
    NetworkError, ResponderTable, TEMatrix,
};
pub use simulator::{
    derive_seed, simulate_match, sweep, Coupling, ScenarioConfig, SimulatorError, SweepConfig,
};
pub use trace::{
    compute_increments, symbolize, AgentIndex, Displacement, EntityId, GameTrace, IncrementSeries,
    Position, SymbolSeries, SymbolizerConfig, Team, TraceError,
};
