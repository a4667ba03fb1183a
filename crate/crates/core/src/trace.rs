//! Positional data model and motion-increment symbolization.
//!
//! A [`GameTrace`] holds per-cycle 2D positions for two ten-agent teams
//! (agent indices 2..=11) plus one ball. The analysis never looks at
//! absolute positions: [`compute_increments`] differences each series into
//! per-cycle displacement vectors, and [`symbolize`] maps every displacement
//! onto a small discrete alphabet — one stationary symbol plus a configurable
//! number of angular direction sectors — which is what the entropy
//! estimators consume.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::math;

/// Lowest valid field-agent index.
pub const AGENT_MIN: u8 = 2;
/// Highest valid field-agent index.
pub const AGENT_MAX: u8 = 11;
/// Field agents per team.
pub const AGENTS_PER_TEAM: usize = (AGENT_MAX - AGENT_MIN + 1) as usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TraceError {
    /// Agent index outside 2..=11. Index 1 (the goalkeeper slot) is rejected
    /// like any other out-of-range value.
    #[error("agent index {index} outside valid roster range {AGENT_MIN}..={AGENT_MAX}")]
    InvalidAgentIndex { index: u8 },
    /// A required entity has no position series.
    #[error("entity {entity} missing from trace")]
    MissingEntity { entity: EntityId },
    /// An entity's series length disagrees with the trace cycle count.
    #[error("entity {entity} has {actual} samples, expected {expected}")]
    SeriesLengthMismatch {
        entity: EntityId,
        expected: usize,
        actual: usize,
    },
    /// Fewer than two cycles: no increments can be formed.
    #[error("trace has {cycles} cycle(s), need at least 2")]
    TooFewCycles { cycles: usize },
    #[error("invalid symbolizer config: {reason}")]
    InvalidSymbolizerConfig { reason: &'static str },
    /// A symbol code at or above the declared alphabet size.
    #[error("symbol {symbol} outside alphabet of size {alphabet}")]
    SymbolOutOfAlphabet { symbol: u8, alphabet: u8 },
    #[error("alphabet size {alphabet} too small, need at least 2")]
    AlphabetTooSmall { alphabet: u8 },
}

/// One of the two opposing teams.
///
/// Team X is "our" side (the responder side of the interaction diagram);
/// team Y is the opponent. Trace files spell them `L` and `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Team {
    X,
    Y,
}

impl Team {
    pub fn opponent(self) -> Team {
        match self {
            Team::X => Team::Y,
            Team::Y => Team::X,
        }
    }
}

impl core::fmt::Display for Team {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Team::X => write!(f, "X"),
            Team::Y => write!(f, "Y"),
        }
    }
}

/// A validated field-agent index in 2..=11.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentIndex(u8);

impl AgentIndex {
    pub fn new(index: u8) -> Result<Self, TraceError> {
        if (AGENT_MIN..=AGENT_MAX).contains(&index) {
            Ok(AgentIndex(index))
        } else {
            Err(TraceError::InvalidAgentIndex { index })
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Zero-based position within a team roster (index 2 maps to 0).
    pub fn roster_slot(self) -> usize {
        (self.0 - AGENT_MIN) as usize
    }

    pub fn from_roster_slot(slot: usize) -> AgentIndex {
        debug_assert!(slot < AGENTS_PER_TEAM);
        AgentIndex(AGENT_MIN + slot as u8)
    }

    /// All ten agent indices, ascending.
    pub fn all() -> impl Iterator<Item = AgentIndex> {
        (AGENT_MIN..=AGENT_MAX).map(AgentIndex)
    }
}

impl core::fmt::Display for AgentIndex {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Identifies one tracked entity: a team agent or the ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityId {
    Agent { team: Team, index: AgentIndex },
    Ball,
}

impl EntityId {
    pub fn agent(team: Team, index: AgentIndex) -> EntityId {
        EntityId::Agent { team, index }
    }

    pub fn ball() -> EntityId {
        EntityId::Ball
    }

    pub fn is_ball(&self) -> bool {
        matches!(self, EntityId::Ball)
    }

    pub fn team(&self) -> Option<Team> {
        match self {
            EntityId::Agent { team, .. } => Some(*team),
            EntityId::Ball => None,
        }
    }

    pub fn index(&self) -> Option<AgentIndex> {
        match self {
            EntityId::Agent { index, .. } => Some(*index),
            EntityId::Ball => None,
        }
    }

    /// The 21 entities every trace must contain: both rosters plus the ball.
    pub fn full_roster() -> impl Iterator<Item = EntityId> {
        let xs = AgentIndex::all().map(|i| EntityId::agent(Team::X, i));
        let ys = AgentIndex::all().map(|i| EntityId::agent(Team::Y, i));
        xs.chain(ys).chain(core::iter::once(EntityId::Ball))
    }
}

impl core::fmt::Display for EntityId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EntityId::Agent { team, index } => write!(f, "{team}{index}"),
            EntityId::Ball => write!(f, "ball"),
        }
    }
}

/// A 2D field position in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    pub fn new(x: f64, y: f64) -> Position {
        Position { x, y }
    }
}

/// A per-cycle displacement vector in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Displacement {
    pub dx: f64,
    pub dy: f64,
}

impl Displacement {
    pub fn new(dx: f64, dy: f64) -> Displacement {
        Displacement { dx, dy }
    }

    pub fn norm(&self) -> f64 {
        math::sqrt(self.dx * self.dx + self.dy * self.dy)
    }
}

impl core::ops::Sub for Position {
    type Output = Displacement;

    fn sub(self, rhs: Position) -> Displacement {
        Displacement::new(self.x - rhs.x, self.y - rhs.y)
    }
}

/// Per-game positional record: N cycles of positions for all 21 entities.
#[derive(Debug, Clone, PartialEq)]
pub struct GameTrace {
    game_id: String,
    cycles: usize,
    entities: BTreeMap<EntityId, Vec<Position>>,
}

impl GameTrace {
    /// Builds a trace, enforcing the structural invariants: the full
    /// 21-entity roster is present, every series has the same length,
    /// and there are at least two cycles.
    pub fn new(
        game_id: impl Into<String>,
        entities: BTreeMap<EntityId, Vec<Position>>,
    ) -> Result<GameTrace, TraceError> {
        for required in EntityId::full_roster() {
            if !entities.contains_key(&required) {
                return Err(TraceError::MissingEntity { entity: required });
            }
        }
        let cycles = entities[&EntityId::Ball].len();
        if cycles < 2 {
            return Err(TraceError::TooFewCycles { cycles });
        }
        for (entity, series) in &entities {
            if series.len() != cycles {
                return Err(TraceError::SeriesLengthMismatch {
                    entity: *entity,
                    expected: cycles,
                    actual: series.len(),
                });
            }
        }
        Ok(GameTrace {
            game_id: game_id.into(),
            cycles,
            entities,
        })
    }

    pub fn game_id(&self) -> &str {
        &self.game_id
    }

    /// Number of cycles N.
    pub fn cycles(&self) -> usize {
        self.cycles
    }

    pub fn positions(&self, entity: EntityId) -> &[Position] {
        self.entities
            .get(&entity)
            .expect("roster invariant guarantees all 21 entities")
    }

    pub fn entities(&self) -> impl Iterator<Item = (EntityId, &[Position])> {
        self.entities.iter().map(|(id, s)| (*id, s.as_slice()))
    }
}

/// Displacement series for one entity, length N-1.
#[derive(Debug, Clone, PartialEq)]
pub struct IncrementSeries {
    entity: EntityId,
    deltas: Vec<Displacement>,
}

impl IncrementSeries {
    pub fn new(entity: EntityId, deltas: Vec<Displacement>) -> IncrementSeries {
        IncrementSeries { entity, deltas }
    }

    pub fn entity(&self) -> EntityId {
        self.entity
    }

    pub fn deltas(&self) -> &[Displacement] {
        &self.deltas
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }
}

/// Per-entity motion increments: `deltas[n] = position[n+1] - position[n]`.
pub fn compute_increments(trace: &GameTrace) -> BTreeMap<EntityId, IncrementSeries> {
    trace
        .entities()
        .map(|(entity, series)| {
            let deltas = series.windows(2).map(|w| w[1] - w[0]).collect();
            (entity, IncrementSeries::new(entity, deltas))
        })
        .collect()
}

/// Discretization parameters for motion increments.
///
/// Displacements with norm at most `stationary_threshold` (meters) become the
/// stationary symbol; anything larger is assigned to one of `sectors` equal
/// angular sectors, half-open on the upper edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolizerConfig {
    stationary_threshold: f64,
    sectors: u8,
}

impl SymbolizerConfig {
    pub fn new(stationary_threshold: f64, sectors: u8) -> Result<SymbolizerConfig, TraceError> {
        if !stationary_threshold.is_finite() || stationary_threshold < 0.0 {
            return Err(TraceError::InvalidSymbolizerConfig {
                reason: "stationary threshold must be finite and >= 0",
            });
        }
        if sectors < 2 {
            return Err(TraceError::InvalidSymbolizerConfig {
                reason: "need at least 2 direction sectors",
            });
        }
        if sectors as usize + 1 > u8::MAX as usize {
            return Err(TraceError::InvalidSymbolizerConfig {
                reason: "at most 254 direction sectors supported",
            });
        }
        Ok(SymbolizerConfig {
            stationary_threshold,
            sectors,
        })
    }

    pub fn stationary_threshold(&self) -> f64 {
        self.stationary_threshold
    }

    pub fn sectors(&self) -> u8 {
        self.sectors
    }

    /// Alphabet size: the stationary symbol plus one symbol per sector.
    pub fn alphabet_size(&self) -> u8 {
        self.sectors + 1
    }
}

impl Default for SymbolizerConfig {
    fn default() -> Self {
        SymbolizerConfig {
            stationary_threshold: 0.05,
            sectors: 8,
        }
    }
}

/// Code of the stationary symbol; direction sector m is encoded as `1 + m`.
pub const STATIONARY: u8 = 0;

/// Symbol code for direction sector `m`.
pub fn direction_symbol(sector: u8) -> u8 {
    1 + sector
}

/// Discretized motion series over the alphabet {stationary, sector 0, ...}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolSeries {
    entity: EntityId,
    symbols: Vec<u8>,
    alphabet_size: u8,
}

impl SymbolSeries {
    pub fn new(
        entity: EntityId,
        symbols: Vec<u8>,
        alphabet_size: u8,
    ) -> Result<SymbolSeries, TraceError> {
        if alphabet_size < 2 {
            return Err(TraceError::AlphabetTooSmall {
                alphabet: alphabet_size,
            });
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s >= alphabet_size) {
            return Err(TraceError::SymbolOutOfAlphabet {
                symbol: bad,
                alphabet: alphabet_size,
            });
        }
        Ok(SymbolSeries {
            entity,
            symbols,
            alphabet_size,
        })
    }

    pub fn entity(&self) -> EntityId {
        self.entity
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Maps one displacement to its symbol code.
///
/// Norm at most the stationary threshold gives the stationary symbol;
/// otherwise sector `m = floor(sectors * angle / 2pi)` with the angle
/// normalized to [0, 2pi). Sector intervals are half-open, so an angle
/// exactly on a boundary belongs to the upper sector.
pub fn symbolize_one(delta: Displacement, cfg: &SymbolizerConfig) -> u8 {
    if delta.norm() <= cfg.stationary_threshold {
        return STATIONARY;
    }
    let mut angle = math::atan2(delta.dy, delta.dx);
    if angle < 0.0 {
        angle += math::TAU;
    }
    let sectors = cfg.sectors as f64;
    let mut sector = math::floor(sectors * angle / math::TAU) as i64;
    // Guard the angle ~ 2pi rounding edge.
    if sector >= cfg.sectors as i64 {
        sector = cfg.sectors as i64 - 1;
    }
    direction_symbol(sector as u8)
}

/// Discretizes a whole increment series.
pub fn symbolize(inc: &IncrementSeries, cfg: &SymbolizerConfig) -> SymbolSeries {
    let symbols = inc
        .deltas()
        .iter()
        .map(|d| symbolize_one(*d, cfg))
        .collect();
    SymbolSeries {
        entity: inc.entity(),
        symbols,
        alphabet_size: cfg.alphabet_size(),
    }
}
