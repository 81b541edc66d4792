//! Seeded random games for property tests and benchmarks.

use std::ops::RangeInclusive;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::ext::{int, ratio};
use crate::game::{CostSpec, Edge, Game, GameGraph, Objectives, PlayerId, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectiveKind {
    Reachability,
    Discounted,
    MeanPayoff,
    Ratio,
}

impl ObjectiveKind {
    pub const ALL: [ObjectiveKind; 4] = [
        ObjectiveKind::Reachability,
        ObjectiveKind::Discounted,
        ObjectiveKind::MeanPayoff,
        ObjectiveKind::Ratio,
    ];
}

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub vertices: RangeInclusive<usize>,
    pub players: RangeInclusive<usize>,
    pub max_out_degree: usize,
    pub kinds: Vec<ObjectiveKind>,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            vertices: 1..=6,
            players: 2..=2,
            max_out_degree: 3,
            kinds: ObjectiveKind::ALL.to_vec(),
        }
    }
}

/// Random game with no sinks. Prices are nonnegative whenever some player
/// has a reachability objective, and rewards are positive whenever some
/// player has a ratio objective, so every generated game validates.
pub fn random_game<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Game {
    let n = rng.gen_range(cfg.vertices.clone());
    let k = rng.gen_range(cfg.players.clone());
    let kinds: Vec<ObjectiveKind> = (0..k).map(|_| *cfg.kinds.choose(rng).expect("some kind")).collect();
    let nonneg = kinds.contains(&ObjectiveKind::Reachability);
    let rewards = kinds.contains(&ObjectiveKind::Ratio);

    let players: Vec<String> = (0..k).map(|i| format!("p{}", i + 1)).collect();
    // the first players each get a vertex when possible, the rest is random
    let vertices: Vec<(String, PlayerId)> = (0..n)
        .map(|v| {
            let owner = if v < k { v } else { rng.gen_range(0..k) };
            (vertex_name(v), PlayerId(owner))
        })
        .collect();
    let mut edges = Vec::new();
    for v in 0..n {
        let deg = rng.gen_range(1..=cfg.max_out_degree.min(n));
        let mut targets: Vec<usize> = (0..n).collect();
        targets.shuffle(rng);
        for &t in &targets[..deg] {
            let price = if nonneg {
                int(rng.gen_range(0..=4))
            } else {
                int(rng.gen_range(-2..=3))
            };
            let reward = if rewards { int(rng.gen_range(1..=3)) } else { int(1) };
            edges.push(Edge {
                from: VertexId(v),
                to: VertexId(t),
                price,
                reward,
            });
        }
    }
    let graph = GameGraph::new(players, vertices, edges).expect("generated graph is well formed");
    let objectives: Objectives = kinds
        .iter()
        .enumerate()
        .map(|(i, &kind)| (PlayerId(i), random_spec(rng, kind, n)))
        .collect();
    let initial = VertexId(rng.gen_range(0..n));
    Game {
        graph,
        objectives,
        initial,
    }
}

pub fn random_spec<R: Rng>(rng: &mut R, kind: ObjectiveKind, n: usize) -> CostSpec {
    match kind {
        ObjectiveKind::Reachability => {
            let size = rng.gen_range(1..=n.min(2));
            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(rng);
            CostSpec::reachability(vs[..size].iter().map(|&v| VertexId(v)))
        }
        ObjectiveKind::Discounted => {
            let lambdas: [BigRational; 5] = [ratio(1, 2), ratio(1, 3), ratio(2, 3), ratio(3, 4), ratio(1, 5)];
            CostSpec::DiscountedPrice {
                lambda: lambdas.choose(rng).unwrap().clone(),
            }
        }
        ObjectiveKind::MeanPayoff => CostSpec::MeanPayoff,
        ObjectiveKind::Ratio => CostSpec::RatioAverage,
    }
}

fn vertex_name(v: usize) -> String {
    // A..Z, then A1, B1, ...
    let letter = (b'A' + (v % 26) as u8) as char;
    if v < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", v / 26)
    }
}
