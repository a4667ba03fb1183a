//! Per-game transfer-entropy matrices, responder selection, and the
//! interaction diagram.
//!
//! For each game a 10x10 matrix holds the conditional transfer entropy from
//! every source-team agent i to every target-team agent j, conditioned on
//! the ball. The responder of i in one game is the argmax of row i; over G
//! games the per-source responder is the mode of the per-game responders.
//! Each source agent contributes one outgoing link to its responder; the hub
//! is the target agent with the most incoming links.
//!
//! Every selection step has a deterministic total-order tie-break, so
//! identical inputs always produce identical diagrams:
//! - per-game argmax: lowest target index wins;
//! - mode: highest mean TE across games, then lowest target index;
//! - hub: largest summed mean incoming TE, then lowest target index.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::estimators::{conditional_transfer_entropy, EstimatorConfig, EstimatorError};
use crate::trace::{
    compute_increments, symbolize, AgentIndex, EntityId, GameTrace, SymbolizerConfig, Team,
    AGENTS_PER_TEAM,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NetworkError {
    #[error("no games supplied, need at least 1")]
    EmptyGameSet,
    #[error("inconsistent game set: {detail}")]
    InconsistentGames { detail: String },
    #[error("matrices mix directions: {a} and {b}")]
    DirectionMismatch { a: Direction, b: Direction },
    #[error("trace {game_id} has {cycles} cycles, need more than k+1 = {min}")]
    TraceTooShort {
        game_id: String,
        cycles: usize,
        min: usize,
    },
    #[error("non-finite entry at ({source_agent}, {target_agent}) in game {game_id}")]
    NonFiniteEntry {
        game_id: String,
        source_agent: AgentIndex,
        target_agent: AgentIndex,
    },
    #[error("entry at ({source_agent}, {target_agent}) in game {game_id} is {value}, below -1e-12")]
    NegativeEntry {
        game_id: String,
        source_agent: AgentIndex,
        target_agent: AgentIndex,
        value: f64,
    },
    #[error(transparent)]
    Estimator(#[from] EstimatorError),
}

/// Which team is the source side and which the target side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// Opponent team Y drives our team X (rows = Y agents, columns = X agents).
    YToX,
    /// Team X drives team Y.
    XToY,
}

impl Direction {
    pub fn source_team(self) -> Team {
        match self {
            Direction::YToX => Team::Y,
            Direction::XToY => Team::X,
        }
    }

    pub fn target_team(self) -> Team {
        self.source_team().opponent()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::YToX => "y2x",
            Direction::XToY => "x2y",
        }
    }
}

impl core::fmt::Display for Direction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Direction {
    type Err = &'static str;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "y2x" => Ok(Direction::YToX),
            "x2y" => Ok(Direction::XToY),
            _ => Err("direction must be 'y2x' or 'x2y'"),
        }
    }
}

/// Per-game 10x10 conditional transfer entropy, in bits.
///
/// Entry (i, j) is the TE from source-team agent i to target-team agent j
/// conditioned on the ball; rows and columns are both indexed by agent
/// indices 2..=11.
#[derive(Debug, Clone, PartialEq)]
pub struct TEMatrix {
    game_id: String,
    direction: Direction,
    values: [[f64; AGENTS_PER_TEAM]; AGENTS_PER_TEAM],
}

impl TEMatrix {
    /// Builds a matrix, rejecting non-finite entries and entries below the
    /// numerical zero guard of -1e-12.
    pub fn new(
        game_id: impl Into<String>,
        direction: Direction,
        values: [[f64; AGENTS_PER_TEAM]; AGENTS_PER_TEAM],
    ) -> Result<TEMatrix, NetworkError> {
        let game_id = game_id.into();
        for i in AgentIndex::all() {
            for j in AgentIndex::all() {
                let v = values[i.roster_slot()][j.roster_slot()];
                if !v.is_finite() {
                    return Err(NetworkError::NonFiniteEntry {
                        game_id,
                        source_agent: i,
                        target_agent: j,
                    });
                }
                if v < -1e-12 {
                    return Err(NetworkError::NegativeEntry {
                        game_id,
                        source_agent: i,
                        target_agent: j,
                        value: v,
                    });
                }
            }
        }
        Ok(TEMatrix {
            game_id,
            direction,
            values,
        })
    }

    pub fn game_id(&self) -> &str {
        &self.game_id
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn value(&self, source: AgentIndex, target: AgentIndex) -> f64 {
        self.values[source.roster_slot()][target.roster_slot()]
    }

    /// Raw rows, source-major; both axes run over roster slots 0..=9.
    pub fn values(&self) -> &[[f64; AGENTS_PER_TEAM]; AGENTS_PER_TEAM] {
        &self.values
    }
}

/// Computes the full TE matrix of one game.
///
/// Every entry is an independent call to the plug-in estimator with the
/// target agent's symbol series as target, the source agent's as source, and
/// the ball's as conditioning series.
pub fn te_matrix(
    trace: &GameTrace,
    sym_cfg: &SymbolizerConfig,
    est_cfg: &EstimatorConfig,
    direction: Direction,
) -> Result<TEMatrix, NetworkError> {
    if trace.cycles() <= est_cfg.history_k() + 1 {
        return Err(NetworkError::TraceTooShort {
            game_id: trace.game_id().to_string(),
            cycles: trace.cycles(),
            min: est_cfg.history_k() + 1,
        });
    }
    let increments = compute_increments(trace);
    let symbols: BTreeMap<EntityId, crate::trace::SymbolSeries> = increments
        .iter()
        .map(|(id, inc)| (*id, symbolize(inc, sym_cfg)))
        .collect();

    let ball = &symbols[&EntityId::Ball];
    let source_team = direction.source_team();
    let target_team = direction.target_team();

    let mut values = [[0.0; AGENTS_PER_TEAM]; AGENTS_PER_TEAM];
    for i in AgentIndex::all() {
        let source = &symbols[&EntityId::agent(source_team, i)];
        for j in AgentIndex::all() {
            let target = &symbols[&EntityId::agent(target_team, j)];
            values[i.roster_slot()][j.roster_slot()] =
                conditional_transfer_entropy(target, source, ball, est_cfg)?;
        }
    }
    TEMatrix::new(trace.game_id(), direction, values)
}

/// Argmax of row `source`: the target agent receiving the most transfer
/// entropy from `source` in this game. Ties go to the lowest target index.
pub fn responder_per_game(matrix: &TEMatrix, source: AgentIndex) -> AgentIndex {
    let row = &matrix.values[source.roster_slot()];
    let mut best = 0usize;
    for j in 1..AGENTS_PER_TEAM {
        if row[j] > row[best] {
            best = j;
        }
    }
    AgentIndex::from_roster_slot(best)
}

/// Per-game responders for every source agent over an ordered set of games,
/// plus the per-pair mean TE used by the mode and hub tie-breaks.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponderTable {
    games: Vec<String>,
    direction: Direction,
    responders: Vec<[AgentIndex; AGENTS_PER_TEAM]>,
    mean_te: [[f64; AGENTS_PER_TEAM]; AGENTS_PER_TEAM],
}

impl ResponderTable {
    pub fn from_matrices(matrices: &[TEMatrix]) -> Result<ResponderTable, NetworkError> {
        if matrices.is_empty() {
            return Err(NetworkError::EmptyGameSet);
        }
        let direction = matrices[0].direction();
        let mut games = Vec::with_capacity(matrices.len());
        for m in matrices {
            if m.direction() != direction {
                return Err(NetworkError::DirectionMismatch {
                    a: direction,
                    b: m.direction(),
                });
            }
            if games.iter().any(|g| g == m.game_id()) {
                return Err(NetworkError::InconsistentGames {
                    detail: alloc::format!("duplicate game id {:?}", m.game_id()),
                });
            }
            games.push(m.game_id().to_string());
        }

        let responders = matrices
            .iter()
            .map(|m| {
                let mut row = [AgentIndex::from_roster_slot(0); AGENTS_PER_TEAM];
                for i in AgentIndex::all() {
                    row[i.roster_slot()] = responder_per_game(m, i);
                }
                row
            })
            .collect();

        let g = matrices.len() as f64;
        let mut mean_te = [[0.0; AGENTS_PER_TEAM]; AGENTS_PER_TEAM];
        for m in matrices {
            for (mean_row, row) in mean_te.iter_mut().zip(m.values()) {
                for (mean, v) in mean_row.iter_mut().zip(row) {
                    *mean += v;
                }
            }
        }
        for row in &mut mean_te {
            for v in row {
                *v /= g;
            }
        }

        Ok(ResponderTable {
            games,
            direction,
            responders,
            mean_te,
        })
    }

    pub fn games(&self) -> &[String] {
        &self.games
    }

    pub fn game_count(&self) -> usize {
        self.games.len()
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Responder of `source` in game number `game` (0-based).
    pub fn responder(&self, game: usize, source: AgentIndex) -> AgentIndex {
        self.responders[game][source.roster_slot()]
    }

    /// Mean TE of the (source, target) pair across all games.
    pub fn mean_te(&self, source: AgentIndex, target: AgentIndex) -> f64 {
        self.mean_te[source.roster_slot()][target.roster_slot()]
    }
}

/// Mode of the per-game responder series for `source`.
///
/// Ties between equally frequent responders go to the candidate with the
/// higher mean TE from `source` across games, then to the lowest index.
pub fn responder_mode(table: &ResponderTable, source: AgentIndex) -> AgentIndex {
    let mut counts = [0usize; AGENTS_PER_TEAM];
    for game in 0..table.game_count() {
        counts[table.responder(game, source).roster_slot()] += 1;
    }
    let max_count = *counts.iter().max().expect("fixed-size row");
    let mut best: Option<AgentIndex> = None;
    for j in AgentIndex::all() {
        if counts[j.roster_slot()] != max_count {
            continue;
        }
        match best {
            None => best = Some(j),
            Some(current) => {
                if table.mean_te(source, j) > table.mean_te(source, current) {
                    best = Some(j);
                }
            }
        }
    }
    best.expect("at least one candidate attains the max count")
}

/// The aggregated interaction diagram: one outgoing link per source agent,
/// incoming-link counts per target agent, and the hub.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionDiagram {
    direction: Direction,
    games: Vec<String>,
    responder: BTreeMap<AgentIndex, AgentIndex>,
    incoming: BTreeMap<AgentIndex, usize>,
    hub: AgentIndex,
    hub_tiebreak_used: bool,
}

impl InteractionDiagram {
    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn games(&self) -> &[String] {
        &self.games
    }

    /// Aggregated responder map source -> target.
    pub fn responder(&self) -> &BTreeMap<AgentIndex, AgentIndex> {
        &self.responder
    }

    /// Incoming-link count per target agent; the ten counts sum to 10.
    pub fn incoming(&self) -> &BTreeMap<AgentIndex, usize> {
        &self.incoming
    }

    pub fn hub(&self) -> AgentIndex {
        self.hub
    }

    pub fn hub_tiebreak_used(&self) -> bool {
        self.hub_tiebreak_used
    }
}

/// Builds the interaction diagram from a responder table and the matrices it
/// was derived from.
///
/// The matrices must be the same game set in the same order; the mean
/// incoming TE read off them breaks hub ties.
pub fn build_diagram(
    table: &ResponderTable,
    matrices: &[TEMatrix],
) -> Result<InteractionDiagram, NetworkError> {
    if matrices.len() != table.game_count() {
        return Err(NetworkError::InconsistentGames {
            detail: alloc::format!(
                "table covers {} game(s), {} matrices supplied",
                table.game_count(),
                matrices.len()
            ),
        });
    }
    for (m, g) in matrices.iter().zip(table.games()) {
        if m.game_id() != g {
            return Err(NetworkError::InconsistentGames {
                detail: alloc::format!("game id {:?} does not match table entry {:?}", m.game_id(), g),
            });
        }
        if m.direction() != table.direction() {
            return Err(NetworkError::DirectionMismatch {
                a: table.direction(),
                b: m.direction(),
            });
        }
    }

    let mut responder = BTreeMap::new();
    let mut incoming: BTreeMap<AgentIndex, usize> = AgentIndex::all().map(|j| (j, 0)).collect();
    for i in AgentIndex::all() {
        let j = responder_mode(table, i);
        responder.insert(i, j);
        *incoming.get_mut(&j).expect("all targets present") += 1;
    }

    let max_incoming = *incoming.values().max().expect("ten targets");
    let candidates: Vec<AgentIndex> = incoming
        .iter()
        .filter(|(_, &c)| c == max_incoming)
        .map(|(&j, _)| j)
        .collect();
    let hub_tiebreak_used = candidates.len() > 1;
    // Tie-break: the candidate whose incoming links carry the most mean TE.
    let incoming_te_mass = |j: AgentIndex| -> f64 {
        responder
            .iter()
            .filter(|(_, &t)| t == j)
            .map(|(&i, _)| table.mean_te(i, j))
            .sum()
    };
    let mut hub = candidates[0];
    let mut hub_mass = incoming_te_mass(hub);
    for &j in &candidates[1..] {
        let mass = incoming_te_mass(j);
        if mass > hub_mass {
            hub = j;
            hub_mass = mass;
        }
    }

    Ok(InteractionDiagram {
        direction: table.direction(),
        games: table.games().to_vec(),
        responder,
        incoming,
        hub,
        hub_tiebreak_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::Position;
    use alloc::vec;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn agent(i: u8) -> AgentIndex {
        AgentIndex::new(i).unwrap()
    }

    fn matrix_with(
        game_id: &str,
        entries: &[(u8, u8, f64)],
    ) -> TEMatrix {
        let mut values = [[0.0; AGENTS_PER_TEAM]; AGENTS_PER_TEAM];
        for &(i, j, v) in entries {
            values[agent(i).roster_slot()][agent(j).roster_slot()] = v;
        }
        TEMatrix::new(game_id, Direction::YToX, values).unwrap()
    }

    #[test]
    fn responder_picks_unique_max() {
        let m = matrix_with("g", &[(3, 7, 0.9), (3, 5, 0.4)]);
        assert_eq!(responder_per_game(&m, agent(3)), agent(7));
    }

    #[test]
    fn responder_tie_goes_to_lowest_index() {
        let m = matrix_with("g", &[(3, 4, 0.7), (3, 9, 0.7)]);
        assert_eq!(responder_per_game(&m, agent(3)), agent(4));
    }

    #[test]
    fn responder_of_zero_row_is_lowest_agent() {
        let m = matrix_with("g", &[]);
        assert_eq!(responder_per_game(&m, agent(6)), agent(2));
    }

    #[test]
    fn matrix_rejects_bad_entries() {
        let mut values = [[0.0; AGENTS_PER_TEAM]; AGENTS_PER_TEAM];
        values[0][0] = f64::NAN;
        assert!(matches!(
            TEMatrix::new("g", Direction::YToX, values),
            Err(NetworkError::NonFiniteEntry { .. })
        ));
        values[0][0] = -1e-6;
        assert!(matches!(
            TEMatrix::new("g", Direction::YToX, values),
            Err(NetworkError::NegativeEntry { .. })
        ));
        values[0][0] = -1e-13; // within the zero guard
        assert!(TEMatrix::new("g", Direction::YToX, values).is_ok());
    }

    #[test]
    fn mode_picks_most_frequent() {
        let ms = vec![
            matrix_with("a", &[(2, 3, 1.0)]),
            matrix_with("b", &[(2, 3, 1.0)]),
            matrix_with("c", &[(2, 5, 1.0)]),
        ];
        let table = ResponderTable::from_matrices(&ms).unwrap();
        assert_eq!(responder_mode(&table, agent(2)), agent(3));
    }

    #[test]
    fn mode_tie_prefers_higher_mean_te() {
        // Game a: responder 3; game b: responder 5, with more TE mass on 5.
        let ms = vec![
            matrix_with("a", &[(2, 3, 0.6)]),
            matrix_with("b", &[(2, 5, 1.4)]),
        ];
        let table = ResponderTable::from_matrices(&ms).unwrap();
        // mean TE(2,5) = 0.7 > mean TE(2,3) = 0.3
        assert_eq!(responder_mode(&table, agent(2)), agent(5));
    }

    #[test]
    fn mode_of_single_game_is_that_responder() {
        let ms = vec![matrix_with("a", &[(2, 8, 0.2)])];
        let table = ResponderTable::from_matrices(&ms).unwrap();
        assert_eq!(responder_mode(&table, agent(2)), agent(8));
    }

    #[test]
    fn diagram_all_to_one_target() {
        let entries: Vec<(u8, u8, f64)> = (2..=11).map(|i| (i, 6, 0.5)).collect();
        let ms = vec![matrix_with("a", &entries)];
        let table = ResponderTable::from_matrices(&ms).unwrap();
        let d = build_diagram(&table, &ms).unwrap();
        assert_eq!(d.hub(), agent(6));
        assert_eq!(d.incoming()[&agent(6)], 10);
        assert!(!d.hub_tiebreak_used());
        assert_eq!(d.incoming().values().sum::<usize>(), 10);
    }

    #[test]
    fn diagram_hub_tie_broken_by_te_mass() {
        // 2,3,4 -> 4 and 5,6,7 -> 7, remaining agents point at themselves'
        // lowest default... give the rest unique targets to keep counts <= 2.
        let mut entries: Vec<(u8, u8, f64)> = vec![
            (2, 4, 0.2),
            (3, 4, 0.2),
            (4, 4, 0.2),
            (5, 7, 0.5),
            (6, 7, 0.5),
            (7, 7, 0.5),
        ];
        entries.extend([(8, 8, 0.1), (9, 9, 0.1), (10, 10, 0.1), (11, 11, 0.1)]);
        let ms = vec![matrix_with("a", &entries)];
        let table = ResponderTable::from_matrices(&ms).unwrap();
        let d = build_diagram(&table, &ms).unwrap();
        assert_eq!(d.incoming()[&agent(4)], 3);
        assert_eq!(d.incoming()[&agent(7)], 3);
        assert_eq!(d.hub(), agent(7), "larger incoming TE mass wins");
        assert!(d.hub_tiebreak_used());
    }

    #[test]
    fn diagram_uniform_pairing_ties_to_lowest() {
        // Each source i points at a distinct target: all incoming counts 1,
        // all TE masses equal, so the tie-break falls through to index order.
        let entries: Vec<(u8, u8, f64)> = (2..=11).map(|i| (i, i, 0.3)).collect();
        let ms = vec![matrix_with("a", &entries)];
        let table = ResponderTable::from_matrices(&ms).unwrap();
        let d = build_diagram(&table, &ms).unwrap();
        assert!(d.incoming().values().all(|&c| c == 1));
        assert_eq!(d.hub(), agent(2));
        assert!(d.hub_tiebreak_used());
    }

    #[test]
    fn duplicate_game_ids_rejected() {
        let ms = vec![matrix_with("a", &[]), matrix_with("a", &[])];
        assert!(matches!(
            ResponderTable::from_matrices(&ms),
            Err(NetworkError::InconsistentGames { .. })
        ));
    }

    #[test]
    fn diagram_rejects_mismatched_games() {
        let ms = vec![matrix_with("a", &[])];
        let table = ResponderTable::from_matrices(&ms).unwrap();
        let other = vec![matrix_with("b", &[])];
        assert!(matches!(
            build_diagram(&table, &other),
            Err(NetworkError::InconsistentGames { .. })
        ));
    }

    #[test]
    fn frozen_teams_give_all_zero_matrix() {
        use alloc::collections::BTreeMap;
        let entities: BTreeMap<EntityId, Vec<Position>> = EntityId::full_roster()
            .map(|e| (e, vec![Position::new(3.0, 4.0); 40]))
            .collect();
        let trace = GameTrace::new("frozen", entities).unwrap();
        let m = te_matrix(
            &trace,
            &SymbolizerConfig::default(),
            &EstimatorConfig::default(),
            Direction::YToX,
        )
        .unwrap();
        for i in AgentIndex::all() {
            for j in AgentIndex::all() {
                assert_eq!(m.value(i, j), 0.0);
            }
        }
    }

    #[test]
    fn te_matrix_rejects_short_trace() {
        use alloc::collections::BTreeMap;
        let entities: BTreeMap<EntityId, Vec<Position>> = EntityId::full_roster()
            .map(|e| (e, vec![Position::new(0.0, 0.0); 3]))
            .collect();
        let trace = GameTrace::new("short", entities).unwrap();
        let err = te_matrix(
            &trace,
            &SymbolizerConfig::default(),
            &EstimatorConfig::default(),
            Direction::YToX,
        )
        .unwrap_err();
        assert!(matches!(err, NetworkError::TraceTooShort { .. }));
    }

    fn arbitrary_matrix() -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(0.0f64..2.0, AGENTS_PER_TEAM * AGENTS_PER_TEAM)
    }

    proptest! {
        #[test]
        fn responder_invariant_under_positive_scaling(
            flat in arbitrary_matrix(),
            scale in prop_oneof![1e-6f64..1.0, 1.0f64..1e6],
        ) {
            let mut values = [[0.0; AGENTS_PER_TEAM]; AGENTS_PER_TEAM];
            let mut scaled = values;
            for (idx, v) in flat.iter().enumerate() {
                values[idx / AGENTS_PER_TEAM][idx % AGENTS_PER_TEAM] = *v;
                scaled[idx / AGENTS_PER_TEAM][idx % AGENTS_PER_TEAM] = *v * scale;
            }
            let m = TEMatrix::new("g", Direction::YToX, values).unwrap();
            let ms = TEMatrix::new("g", Direction::YToX, scaled).unwrap();
            for i in AgentIndex::all() {
                prop_assert_eq!(responder_per_game(&m, i), responder_per_game(&ms, i));
            }
        }

        #[test]
        fn diagram_is_deterministic(flat in arbitrary_matrix()) {
            let mut values = [[0.0; AGENTS_PER_TEAM]; AGENTS_PER_TEAM];
            for (idx, v) in flat.iter().enumerate() {
                values[idx / AGENTS_PER_TEAM][idx % AGENTS_PER_TEAM] = *v;
            }
            let ms = vec![TEMatrix::new("g", Direction::YToX, values).unwrap()];
            let table = ResponderTable::from_matrices(&ms).unwrap();
            let d1 = build_diagram(&table, &ms).unwrap();
            let d2 = build_diagram(&table, &ms).unwrap();
            prop_assert_eq!(d1.incoming().values().sum::<usize>(), 10);
            prop_assert_eq!(d1, d2);
        }

        #[test]
        fn diagram_respects_agent_relabeling(
            flat in arbitrary_matrix(),
            perm_vec in Just((0..AGENTS_PER_TEAM).collect::<Vec<usize>>()).prop_shuffle(),
        ) {
            // Permuting both axes together must map the diagram through the
            // permutation.
            let perm = |s: usize| perm_vec[s];
            let mut values = [[0.0; AGENTS_PER_TEAM]; AGENTS_PER_TEAM];
            let mut permuted = values;
            for (idx, v) in flat.iter().enumerate() {
                let (i, j) = (idx / AGENTS_PER_TEAM, idx % AGENTS_PER_TEAM);
                values[i][j] = *v;
                permuted[perm(i)][perm(j)] = *v;
            }
            let ms = vec![TEMatrix::new("g", Direction::YToX, values).unwrap()];
            let table = ResponderTable::from_matrices(&ms).unwrap();
            let d = build_diagram(&table, &ms).unwrap();
            let pms = vec![TEMatrix::new("g", Direction::YToX, permuted).unwrap()];
            let ptable = ResponderTable::from_matrices(&pms).unwrap();
            let pd = build_diagram(&ptable, &pms).unwrap();
            for i in AgentIndex::all() {
                let mapped = AgentIndex::from_roster_slot(perm(i.roster_slot()));
                let j = d.responder()[&i];
                let expected = AgentIndex::from_roster_slot(perm(j.roster_slot()));
                prop_assert_eq!(pd.responder()[&mapped], expected);
            }
            if !d.hub_tiebreak_used() && !pd.hub_tiebreak_used() {
                let mapped_hub = AgentIndex::from_roster_slot(perm(d.hub().roster_slot()));
                prop_assert_eq!(pd.hub(), mapped_hub);
            }
        }
    }
}
