#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::One;
use quantgame::ext::ExtRational;
use quantgame::game::{CostSpec, Game, GameGraph, History, LassoPlay, StrategyAutomaton, VertexId};
use quantgame::gen::{random_game, GenConfig};
use quantgame::solvers::{MinMaxInstance, SolveResult};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random games with 2–4 players and up to 8 vertices, objectives mixed.
pub fn equilibrium_games(seed: u64, count: usize) -> Vec<Game> {
    let mut rng = rng(seed);
    let cfg = GenConfig {
        vertices: 1..=8,
        players: 2..=4,
        ..GenConfig::default()
    };
    (0..count).map(|_| random_game(&mut rng, &cfg)).collect()
}

/// Same advice as `a`, with a second state that the automaton alternates
/// into on every step.
pub fn with_redundant_state(a: &StrategyAutomaton) -> StrategyAutomaton {
    assert_eq!(a.num_states(), 1);
    let n = a.update[0].len();
    StrategyAutomaton {
        player: a.player,
        labels: vec!["x".into(), "y".into()],
        initial: 0,
        update: vec![vec![1; n], vec![0; n]],
        advice: vec![a.advice[0].clone(), a.advice[0].clone()],
    }
}

/// Random walk of `edges` steps from `start`.
pub fn random_history<R: Rng>(rng: &mut R, g: &GameGraph, start: VertexId, edges: usize) -> History {
    let mut path = vec![start];
    for _ in 0..edges {
        let succ: Vec<VertexId> = g.successors(*path.last().unwrap()).collect();
        path.push(*succ.choose(rng).unwrap());
    }
    History::new(g, path).unwrap()
}

/// Random walk from `start` closed into a lasso at the first repeated vertex.
pub fn random_lasso<R: Rng>(rng: &mut R, g: &GameGraph, start: VertexId) -> LassoPlay {
    let mut path = vec![start];
    loop {
        let succ: Vec<VertexId> = g.successors(*path.last().unwrap()).collect();
        let next = *succ.choose(rng).unwrap();
        if let Some(i) = path.iter().position(|&v| v == next) {
            let cycle = path.split_off(i);
            return LassoPlay::new(g, path, cycle).unwrap();
        }
        path.push(next);
    }
}

/// `opt` over successors of `f(price, value(succ))`.
fn bellman(
    inst: &MinMaxInstance<'_>,
    res: &SolveResult,
    v: VertexId,
    f: impl Fn(&BigRational, &ExtRational) -> ExtRational,
) -> ExtRational {
    let g = inst.graph;
    let options = g.out_edges(v).iter().map(|&e| {
        let edge = g.edge(e);
        f(&edge.price, res.value(edge.to))
    });
    if inst.is_min(v) {
        options.min().unwrap()
    } else {
        options.max().unwrap()
    }
}

/// Vertices where the solved values break the one-step optimality
/// equation. Reachability is checked where the value is finite (Min's
/// attractor of the goal) outside the goal; mean payoff in its
/// successor-value form. Other objectives have no residual to check.
pub fn bellman_violations(inst: &MinMaxInstance<'_>, res: &SolveResult) -> Vec<VertexId> {
    let g = inst.graph;
    g.vertices()
        .filter(|&v| {
            let expected = match &inst.objective {
                CostSpec::ReachabilityPrice { goal } if goal.contains(&v) => return false,
                CostSpec::ReachabilityPrice { .. } if !res.value(v).is_finite() => return false,
                CostSpec::ReachabilityPrice { .. } => bellman(inst, res, v, |p, x| x.add_finite(p)),
                CostSpec::DiscountedPrice { lambda } => {
                    let one_minus = BigRational::one() - lambda;
                    bellman(inst, res, v, |p, x| {
                        x.scale_nonneg(lambda).add_finite(&(&one_minus * p))
                    })
                }
                CostSpec::MeanPayoff => bellman(inst, res, v, |_, x| x.clone()),
                _ => return false,
            };
            *res.value(v) != expected
        })
        .collect()
}
