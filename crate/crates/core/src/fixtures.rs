//! Small hand-made games used in documentation, tests and the CLI demos.

use crate::ext::int;
use crate::game::{CostSpec, Game, GameGraph, PlayerId};

/// Two players on four vertices. `p1` owns `A`, `C`, `D` and wants to reach
/// `C` cheaply; `p2` owns `B` and minimizes the mean price.
pub fn reach_and_mean() -> Game {
    let graph = GameGraph::builder()
        .player("p1")
        .player("p2")
        .vertex("A", "p1")
        .vertex("B", "p2")
        .vertex("C", "p1")
        .vertex("D", "p1")
        .edge("A", "B", 1)
        .edge("A", "D", 2)
        .edge("B", "C", 1)
        .edge("B", "A", 1)
        .edge("C", "B", 3)
        .edge("D", "B", 3)
        .build()
        .expect("well-formed sample game");
    let c = graph.vertex("C").unwrap();
    let initial = graph.vertex("A").unwrap();
    let objectives = [
        (PlayerId(0), CostSpec::reachability([c])),
        (PlayerId(1), CostSpec::MeanPayoff),
    ]
    .into();
    Game {
        graph,
        objectives,
        initial,
    }
}

/// One player, two vertices with `+1` moves out of and around `A` and `-1`
/// moves out of and around `B`; energy objective with threshold 2.
pub fn energy_loops() -> Game {
    let graph = GameGraph::builder()
        .player("p")
        .vertex("A", "p")
        .vertex("B", "p")
        .edge("A", "A", 1)
        .edge("B", "B", -1)
        .edge("A", "B", 1)
        .edge("B", "A", -1)
        .build()
        .expect("well-formed sample game");
    let initial = graph.vertex("A").unwrap();
    Game {
        graph,
        objectives: [(PlayerId(0), CostSpec::EnergySup { threshold: int(2) })].into(),
        initial,
    }
}

/// One player, two vertices: `A` loops at price 0, `B` loops at price 1,
/// `A→B` costs 1 and `B→A` costs 0. Mean-payoff objective.
pub fn two_loops() -> Game {
    let graph = GameGraph::builder()
        .player("p")
        .vertex("A", "p")
        .vertex("B", "p")
        .edge("A", "A", 0)
        .edge("B", "B", 1)
        .edge("A", "B", 1)
        .edge("B", "A", 0)
        .build()
        .expect("well-formed sample game");
    let initial = graph.vertex("A").unwrap();
    Game {
        graph,
        objectives: [(PlayerId(0), CostSpec::MeanPayoff)].into(),
        initial,
    }
}
