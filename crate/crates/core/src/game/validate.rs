use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{CostSpec, GameGraph, Objectives};
use crate::ext::format_rational;
use crate::solvers::cycles::min_cycle_mean;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SinkVertex(String),
    MissingObjective(String),
    UnknownObjectivePlayer(usize),
    LambdaOutOfRange { player: String, lambda: String },
    EmptyGoal(String),
    GoalOutOfRange(String),
    NegativePrice { from: String, to: String },
    NonDivergingReward,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SinkVertex(v) => write!(f, "sink vertex {v}"),
            Violation::MissingObjective(p) => write!(f, "no objective for player {p}"),
            Violation::UnknownObjectivePlayer(i) => write!(f, "objective for unknown player #{i}"),
            Violation::LambdaOutOfRange { player, lambda } => {
                write!(f, "lambda out of range (0,1) for player {player}: {lambda}")
            }
            Violation::EmptyGoal(p) => write!(f, "empty goal set for player {p}"),
            Violation::GoalOutOfRange(p) => write!(f, "goal of player {p} names an unknown vertex"),
            Violation::NegativePrice { from, to } => write!(
                f,
                "negative price on {from} -> {to} with a reachability-price objective"
            ),
            Violation::NonDivergingReward => write!(f, "non-diverging reward"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Structural checks a game must pass before it is evaluated or solved.
pub fn validate_game(g: &GameGraph, specs: &Objectives) -> ValidationReport {
    let mut out = Vec::new();
    for v in g.vertices() {
        if g.out_edges(v).is_empty() {
            out.push(Violation::SinkVertex(g.vertex_name(v).to_string()));
        }
    }
    for p in g.players() {
        if !specs.contains_key(&p) {
            out.push(Violation::MissingObjective(g.player_name(p).to_string()));
        }
    }
    for (&p, spec) in specs {
        if p.0 >= g.num_players() {
            out.push(Violation::UnknownObjectivePlayer(p.0));
            continue;
        }
        let name = g.player_name(p).to_string();
        match spec {
            CostSpec::DiscountedPrice { lambda } => {
                if !lambda.is_positive() || *lambda >= num_rational::BigRational::one() {
                    out.push(Violation::LambdaOutOfRange {
                        player: name,
                        lambda: format_rational(lambda),
                    });
                }
            }
            CostSpec::ReachabilityPrice { goal } => {
                if goal.is_empty() {
                    out.push(Violation::EmptyGoal(name));
                } else if goal.iter().any(|v| v.0 >= g.num_vertices()) {
                    out.push(Violation::GoalOutOfRange(name));
                }
            }
            _ => {}
        }
    }
    if specs.values().any(|s| matches!(s, CostSpec::ReachabilityPrice { .. })) {
        for e in g.edges() {
            if e.price.is_negative() {
                out.push(Violation::NegativePrice {
                    from: g.vertex_name(e.from).to_string(),
                    to: g.vertex_name(e.to).to_string(),
                });
            }
        }
    }
    if specs.values().any(|s| matches!(s, CostSpec::RatioAverage)) && !rewards_diverge(g) {
        out.push(Violation::NonDivergingReward);
    }
    ValidationReport { violations: out }
}

/// Every cycle has a positive reward sum, i.e. the minimum cycle mean of
/// the rewards is positive.
pub(crate) fn rewards_diverge(g: &GameGraph) -> bool {
    let edges: Vec<_> = g.edges().iter().map(|e| (e.from.0, e.to.0, e.reward.clone())).collect();
    match min_cycle_mean(g.num_vertices(), &edges) {
        Some(mu) => mu > num_rational::BigRational::zero(),
        None => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{int, ratio};
    use crate::fixtures;
    use crate::game::{GameGraph, PlayerId};

    #[test]
    fn sample_games_are_clean() {
        for game in [
            fixtures::reach_and_mean(),
            fixtures::energy_loops(),
            fixtures::two_loops(),
        ] {
            let report = game.validate();
            assert!(report.is_ok(), "{report}");
        }
    }

    #[test]
    fn reports_sinks_and_bad_lambda() {
        let g = GameGraph::builder()
            .player("p")
            .vertex("W", "p")
            .vertex("X", "p")
            .edge("W", "X", 1)
            .build()
            .unwrap();
        let specs: Objectives = [(PlayerId(0), CostSpec::DiscountedPrice { lambda: ratio(3, 2) })].into();
        let report = validate_game(&g, &specs);
        let text: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        assert_eq!(text[0], "sink vertex X");
        assert!(text[1].starts_with("lambda out of range (0,1)"));
    }

    #[test]
    fn zero_reward_cycle_is_rejected_for_ratio() {
        let g = GameGraph::builder()
            .player("p")
            .vertex("a", "p")
            .vertex("b", "p")
            .edge_with("a", "b", int(1), int(1))
            .edge_with("b", "a", int(1), int(-1))
            .edge_with("b", "b", int(1), int(2))
            .build()
            .unwrap();
        let specs: Objectives = [(PlayerId(0), CostSpec::RatioAverage)].into();
        assert_eq!(
            validate_game(&g, &specs).violations,
            vec![Violation::NonDivergingReward]
        );
        let specs: Objectives = [(PlayerId(0), CostSpec::MeanPayoff)].into();
        assert!(validate_game(&g, &specs).is_ok());
    }

    #[test]
    fn negative_prices_only_matter_for_reachability() {
        let g = GameGraph::builder()
            .player("p")
            .vertex("a", "p")
            .edge("a", "a", -1)
            .build()
            .unwrap();
        let rp: Objectives = [(PlayerId(0), CostSpec::reachability([crate::game::VertexId(0)]))].into();
        assert_eq!(validate_game(&g, &rp).violations.len(), 1);
        let mp: Objectives = [(PlayerId(0), CostSpec::MeanPayoff)].into();
        assert!(validate_game(&g, &mp).is_ok());
    }
}
