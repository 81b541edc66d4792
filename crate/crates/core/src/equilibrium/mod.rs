//! Punishment-based Nash equilibria.
//!
//! Every player follows an optimal strategy of their own Min-Max game and,
//! as soon as someone leaves the agreed play, the others switch for good to
//! a coalition strategy that is optimal against the first deviator. The
//! agreed play, the punishment target and the punishers' memory all fit in
//! a finite Mealy machine per player.

mod automaton;
mod simulate;
mod synth;
mod verify;

use std::collections::BTreeMap;

use crate::cost::CostError;
use crate::ext::ExtRational;
use crate::game::{CostSpec, GameError, GameGraph, LassoPlay, Objectives, PlayerId, StrategyAutomaton};
use crate::solvers::SolveError;

pub use automaton::build_strategy_automaton;
pub use simulate::outcome_of;
pub use synth::{synthesize_ne, synthesize_ne_general, Overrides};
pub use verify::verify_ne;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquilibriumError {
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("objective of player {0} cannot be solved")]
    Unsolvable(String),
    #[error("no objective for player {0}")]
    MissingObjective(String),
    #[error("no strategy automaton for player {0}")]
    MissingAutomaton(String),
    #[error("automaton given for {expected} belongs to {found}")]
    WrongOwner { expected: String, found: String },
    #[error("no punishment strategy of {player} against {against}")]
    MissingPunishment { player: String, against: String },
    #[error("override for {player} is not optimal at {vertex}: value {value}, override guarantees {achieved}")]
    OverrideNotOptimal {
        player: String,
        vertex: String,
        value: ExtRational,
        achieved: ExtRational,
    },
    #[error("override for {player} chooses at {vertex}, which {player} does not own")]
    OverrideOutsidePlayer { player: String, vertex: String },
    #[error("play leaves the strategy of {player} at {vertex}")]
    InconsistentPlay { player: String, vertex: String },
    #[error("play {0} visits a vertex twice before closing its cycle")]
    RepeatedVertex(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Cost(#[from] CostError),
}

/// The strategies a player's equilibrium automaton is made from: an
/// optimal strategy in their own game, and their share of the coalition
/// strategy against each other player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayerStrategies {
    pub optimal: StrategyAutomaton,
    pub punish: BTreeMap<PlayerId, StrategyAutomaton>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NashProfile {
    pub automata: BTreeMap<PlayerId, StrategyAutomaton>,
    pub outcome: LassoPlay,
    pub costs: BTreeMap<PlayerId, ExtRational>,
    /// `val^i(v0)` of each player's Min-Max game.
    pub values: BTreeMap<PlayerId, ExtRational>,
    pub provenance: BTreeMap<PlayerId, PlayerStrategies>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeviationCheck {
    pub outcome_cost: ExtRational,
    pub best_response: ExtRational,
    pub profitable: bool,
    /// A play reaching `best_response`, kept only when it is profitable.
    pub witness: Option<LassoPlay>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub outcome: LassoPlay,
    pub players: BTreeMap<PlayerId, DeviationCheck>,
}

impl VerificationReport {
    pub fn is_equilibrium(&self) -> bool {
        self.players.values().all(|c| !c.profitable)
    }

    pub fn profitable(&self) -> impl Iterator<Item = (PlayerId, &DeviationCheck)> {
        self.players.iter().filter(|(_, c)| c.profitable).map(|(&p, c)| (p, c))
    }
}

fn objective<'a>(g: &GameGraph, specs: &'a Objectives, p: PlayerId) -> Result<&'a CostSpec, EquilibriumError> {
    let spec = specs
        .get(&p)
        .ok_or_else(|| EquilibriumError::MissingObjective(g.player_name(p).to_string()))?;
    if !spec.is_solvable() {
        return Err(EquilibriumError::Unsolvable(g.player_name(p).to_string()));
    }
    Ok(spec)
}

/// Every automaton is present, well formed and owned by its key.
fn check_automata(g: &GameGraph, automata: &BTreeMap<PlayerId, StrategyAutomaton>) -> Result<(), EquilibriumError> {
    for p in g.players() {
        let a = automata
            .get(&p)
            .ok_or_else(|| EquilibriumError::MissingAutomaton(g.player_name(p).to_string()))?;
        check_owner(g, a, p)?;
    }
    Ok(())
}

fn check_owner(g: &GameGraph, a: &StrategyAutomaton, p: PlayerId) -> Result<(), EquilibriumError> {
    if a.player != p {
        return Err(EquilibriumError::WrongOwner {
            expected: g.player_name(p).to_string(),
            found: g.player_name(a.player).to_string(),
        });
    }
    a.check(g)?;
    Ok(())
}
