//! Multiplayer cost games: arena, objectives, plays and strategies.

mod graph;
mod play;
mod strategy;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;

pub use graph::{Edge, EdgeId, GameGraph, GameGraphBuilder, PlayerId, VertexId};
pub use play::{History, LassoPlay};
pub use strategy::{PositionalStrategy, StrategyAutomaton};
pub(crate) use validate::rewards_diverge;
pub use validate::{validate_game, ValidationReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("game has no players")]
    NoPlayers,
    #[error("game has no vertices")]
    NoVertices,
    #[error("duplicate player {0}")]
    DuplicatePlayer(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("unknown player {0}")]
    UnknownPlayer(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("parallel edge {from} -> {to}")]
    ParallelEdge { from: String, to: String },
    #[error("history must contain at least one vertex")]
    EmptyHistory,
    #[error("lasso cycle must contain at least one vertex")]
    EmptyCycle,
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("strategy picks {from} -> {to}, which is not an edge")]
    NotAnEdge { from: String, to: String },
    #[error("strategy gives no choice at vertex {0}")]
    MissingChoice(String),
    #[error("malformed automaton: {0}")]
    MalformedAutomaton(String),
}

/// Objective of one player. Every variant except `EnergySup` is
/// prefix-linear and can be solved; `EnergySup` is evaluation-only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CostSpec {
    ReachabilityPrice { goal: BTreeSet<VertexId> },
    DiscountedPrice { lambda: BigRational },
    MeanPayoff,
    RatioAverage,
    EnergySup { threshold: BigRational },
}

impl CostSpec {
    pub fn is_solvable(&self) -> bool {
        !matches!(self, CostSpec::EnergySup { .. })
    }

    /// Name used in game documents.
    pub fn type_name(&self) -> &'static str {
        match self {
            CostSpec::ReachabilityPrice { .. } => "reachability_price",
            CostSpec::DiscountedPrice { .. } => "discounted",
            CostSpec::MeanPayoff => "mean_payoff",
            CostSpec::RatioAverage => "ratio",
            CostSpec::EnergySup { .. } => "energy_sup",
        }
    }

    pub fn reachability<I: IntoIterator<Item = VertexId>>(goal: I) -> Self {
        CostSpec::ReachabilityPrice {
            goal: goal.into_iter().collect(),
        }
    }
}

impl fmt::Display for CostSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostSpec::DiscountedPrice { lambda } => {
                write!(f, "discounted({})", crate::ext::format_rational(lambda))
            }
            CostSpec::EnergySup { threshold } => {
                write!(f, "energy_sup({})", crate::ext::format_rational(threshold))
            }
            other => f.write_str(other.type_name()),
        }
    }
}

pub type Objectives = BTreeMap<PlayerId, CostSpec>;

/// A complete game: arena, one objective per player and an initial vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    pub graph: GameGraph,
    pub objectives: Objectives,
    pub initial: VertexId,
}

impl Game {
    pub fn objective(&self, p: PlayerId) -> &CostSpec {
        &self.objectives[&p]
    }

    pub fn validate(&self) -> ValidationReport {
        validate_game(&self.graph, &self.objectives)
    }
}
