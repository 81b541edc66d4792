//! Two-player Min-Max solvers with exact values and positional optimal
//! strategies, a brute-force oracle, and one-player optimization.

pub(crate) mod arena;
mod attractor;
mod brute;
pub(crate) mod cycles;
mod discounted;
mod energy;
mod mean_payoff;
mod one_player;
mod ratio;
mod reachability;

use std::collections::BTreeSet;

use num_traits::{One, Signed};

use crate::cost::CostError;
use crate::ext::ExtRational;
use crate::game::{CostSpec, GameGraph, PlayerId, PositionalStrategy, VertexId};

pub use attractor::{attractor, Side};
pub use brute::{brute_force_value, BruteForceValues, DEFAULT_PROFILE_CAP};
pub use discounted::{solve_discounted, DiscountedMode};
pub use mean_payoff::solve_mean_payoff;
pub use one_player::one_player_optimum;
pub use ratio::solve_ratio;
pub use reachability::solve_reachability_price;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("{0} objectives cannot be solved")]
    NotSolvable(&'static str),
    #[error("objective {expected} expected, got {found}")]
    WrongObjective {
        expected: &'static str,
        found: &'static str,
    },
    #[error("sink vertex {0}")]
    SinkVertex(String),
    #[error("reachability-price solving needs nonnegative prices ({from} -> {to} is negative)")]
    NegativePrice { from: String, to: String },
    #[error("lambda out of range (0,1)")]
    LambdaOutOfRange,
    #[error("non-diverging reward")]
    NonDivergingReward,
    #[error("brute force would enumerate {profiles} profiles, above the cap of {cap}")]
    CapExceeded { profiles: u128, cap: u128 },
    #[error(transparent)]
    Cost(#[from] CostError),
}

/// Two-sided game: Min owns `min_side`, Max owns the rest.
#[derive(Clone, Debug)]
pub struct MinMaxInstance<'g> {
    pub graph: &'g GameGraph,
    pub min_side: Vec<bool>,
    pub objective: CostSpec,
}

impl<'g> MinMaxInstance<'g> {
    pub fn new(
        graph: &'g GameGraph,
        min_vertices: &BTreeSet<VertexId>,
        objective: CostSpec,
    ) -> Result<Self, SolveError> {
        for v in graph.vertices() {
            if graph.out_edges(v).is_empty() {
                return Err(SolveError::SinkVertex(graph.vertex_name(v).to_string()));
            }
        }
        let min_side = graph.vertices().map(|v| min_vertices.contains(&v)).collect();
        Ok(MinMaxInstance {
            graph,
            min_side,
            objective,
        })
    }

    /// The game where `player` minimizes `objective` against the coalition
    /// of everybody else.
    pub fn for_player(graph: &'g GameGraph, player: PlayerId, objective: CostSpec) -> Result<Self, SolveError> {
        let mine = graph.vertices_of(player).collect();
        MinMaxInstance::new(graph, &mine, objective)
    }

    /// Every vertex on one side.
    pub fn one_sided(graph: &'g GameGraph, owner_is_min: bool, objective: CostSpec) -> Result<Self, SolveError> {
        let side = if owner_is_min {
            graph.vertices().collect()
        } else {
            BTreeSet::new()
        };
        MinMaxInstance::new(graph, &side, objective)
    }

    pub fn is_min(&self, v: VertexId) -> bool {
        self.min_side[v.0]
    }

    pub fn min_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.graph.vertices().filter(move |&v| self.is_min(v))
    }

    pub fn max_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.graph.vertices().filter(move |&v| !self.is_min(v))
    }

    /// Instance with Min's choices fixed to `sigma` at the given vertices.
    pub fn pin(&self, sigma: &PositionalStrategy) -> Result<GameGraph, SolveError> {
        let g = self.graph;
        let players: Vec<String> = g.players().map(|p| g.player_name(p).to_string()).collect();
        let vertices = g
            .vertices()
            .map(|v| (g.vertex_name(v).to_string(), g.owner(v)))
            .collect();
        let edges = g
            .edges()
            .iter()
            .filter(|e| sigma.get(e.from).is_none_or(|to| to == e.to))
            .cloned()
            .collect();
        GameGraph::new(players, vertices, edges).map_err(|e| SolveError::SinkVertex(e.to_string()))
    }

    fn check_objective(&self) -> Result<(), SolveError> {
        let g = self.graph;
        match &self.objective {
            CostSpec::ReachabilityPrice { .. } => {
                if let Some(e) = g.edges().iter().find(|e| e.price.is_negative()) {
                    return Err(SolveError::NegativePrice {
                        from: g.vertex_name(e.from).to_string(),
                        to: g.vertex_name(e.to).to_string(),
                    });
                }
            }
            CostSpec::DiscountedPrice { lambda } => {
                if !lambda.is_positive() || *lambda >= num_rational::BigRational::one() {
                    return Err(SolveError::LambdaOutOfRange);
                }
            }
            CostSpec::RatioAverage => {
                if !crate::game::rewards_diverge(g) {
                    return Err(SolveError::NonDivergingReward);
                }
            }
            CostSpec::MeanPayoff => {}
            CostSpec::EnergySup { .. } => return Err(SolveError::NotSolvable("energy_sup")),
        }
        Ok(())
    }
}

/// Values for every vertex and positional optimal strategies for both
/// sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub values: Vec<ExtRational>,
    pub sigma_min: PositionalStrategy,
    pub sigma_max: PositionalStrategy,
}

impl SolveResult {
    pub fn value(&self, v: VertexId) -> &ExtRational {
        &self.values[v.0]
    }

    /// Both strategies combined into one total choice function.
    pub fn profile(&self) -> PositionalStrategy {
        self.sigma_min.merged(&self.sigma_max)
    }
}

/// Solves with the algorithm matching the objective (discounted games in
/// exact mode).
pub fn solve(inst: &MinMaxInstance<'_>) -> Result<SolveResult, SolveError> {
    match inst.objective {
        CostSpec::ReachabilityPrice { .. } => solve_reachability_price(inst),
        CostSpec::DiscountedPrice { .. } => solve_discounted(inst, DiscountedMode::Exact),
        CostSpec::MeanPayoff => solve_mean_payoff(inst),
        CostSpec::RatioAverage => solve_ratio(inst),
        CostSpec::EnergySup { .. } => Err(SolveError::NotSolvable("energy_sup")),
    }
}

fn wrong(expected: &'static str, found: &CostSpec) -> SolveError {
    SolveError::WrongObjective {
        expected,
        found: found.type_name(),
    }
}
