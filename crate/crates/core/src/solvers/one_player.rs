use std::collections::VecDeque;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::cycles::min_mean_cycle;
use super::{solve, MinMaxInstance, SolveError};
use crate::ext::ExtRational;
use crate::game::{CostSpec, GameGraph, LassoPlay, VertexId};

/// Optimal value over all plays from `start` when a single decision-maker
/// controls every vertex, with a lasso attaining it.
///
/// Positional plays suffice for every solvable objective, so the optimum
/// over lassos is the optimum over all plays.
pub fn one_player_optimum(
    g: &GameGraph,
    spec: &CostSpec,
    owner_is_min: bool,
    start: VertexId,
) -> Result<(ExtRational, LassoPlay), SolveError> {
    match spec {
        CostSpec::ReachabilityPrice { .. } | CostSpec::DiscountedPrice { .. } => {
            let inst = MinMaxInstance::one_sided(g, owner_is_min, spec.clone())?;
            let res = solve(&inst)?;
            let play = LassoPlay::from_positional(g, &res.profile(), start).expect("solver strategies are total");
            Ok((res.value(start).clone(), play))
        }
        CostSpec::MeanPayoff => {
            let sub = Reachable::new(g, start);
            let sign = if owner_is_min { 1 } else { -1 };
            let weights = sub.weights(g, |p, _| p * BigRational::from_integer(sign.into()));
            let (mu, cycle) = min_mean_cycle(sub.vertices.len(), &weights).expect("every vertex has a successor");
            let value = if owner_is_min { mu } else { -mu };
            Ok((ExtRational::Finite(value), sub.lasso(g, &weights, &cycle)))
        }
        CostSpec::RatioAverage => {
            if !crate::game::rewards_diverge(g) {
                return Err(SolveError::NonDivergingReward);
            }
            let sub = Reachable::new(g, start);
            let sign = BigRational::from_integer(if owner_is_min { 1 } else { -1 }.into());
            let ratio_of = |cycle: &[usize]| {
                let (p, r) = cycle
                    .iter()
                    .fold((BigRational::zero(), BigRational::zero()), |(p, r), &e| {
                        let edge = g.edge(sub.edges[e]);
                        (p + &edge.price, r + &edge.reward)
                    });
                debug_assert!(r.is_positive());
                p / r
            };
            // Dinkelbach iteration: each round moves to a strictly better cycle.
            let first = sub.weights(g, |p, _| p * &sign);
            let (_, mut cycle) = min_mean_cycle(sub.vertices.len(), &first).expect("every vertex has a successor");
            let mut t = ratio_of(&cycle);
            loop {
                let w = sub.weights(g, |p, r| (p - &t * r) * &sign);
                let (mu, c) = min_mean_cycle(sub.vertices.len(), &w).expect("every vertex has a successor");
                if !mu.is_negative() {
                    break;
                }
                cycle = c;
                t = ratio_of(&cycle);
            }
            let weights = sub.weights(g, |p, _| p.clone());
            Ok((ExtRational::Finite(t), sub.lasso(g, &weights, &cycle)))
        }
        CostSpec::EnergySup { .. } => Err(SolveError::NotSolvable("energy_sup")),
    }
}

/// The subgraph reachable from a start vertex, with local indices.
struct Reachable {
    vertices: Vec<VertexId>,
    local: Vec<Option<usize>>,
    /// global edge ids, in input order
    edges: Vec<crate::game::EdgeId>,
    /// BFS parent edge for reconstructing paths
    parent: Vec<Option<usize>>,
}

impl Reachable {
    fn new(g: &GameGraph, start: VertexId) -> Self {
        let mut local = vec![None; g.num_vertices()];
        let mut vertices = vec![start];
        let mut parent = vec![None];
        local[start.0] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for u in g.successors(v) {
                if local[u.0].is_none() {
                    local[u.0] = Some(vertices.len());
                    vertices.push(u);
                    parent.push(Some(local[v.0].unwrap()));
                    queue.push_back(u);
                }
            }
        }
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| local[e.from.0].is_some())
            .map(|(i, _)| crate::game::EdgeId(i))
            .collect();
        Reachable {
            vertices,
            local,
            edges,
            parent,
        }
    }

    fn weights(
        &self,
        g: &GameGraph,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Vec<(usize, usize, BigRational)> {
        self.edges
            .iter()
            .map(|&e| {
                let edge = g.edge(e);
                (
                    self.local[edge.from.0].unwrap(),
                    self.local[edge.to.0].unwrap(),
                    f(&edge.price, &edge.reward),
                )
            })
            .collect()
    }

    /// Shortest path from the start to the cycle, then around the cycle.
    fn lasso(&self, g: &GameGraph, weights: &[(usize, usize, BigRational)], cycle: &[usize]) -> LassoPlay {
        let on_cycle: Vec<usize> = cycle.iter().map(|&e| weights[e].0).collect();
        // BFS discovery order is by distance, so the smallest local index
        // on the cycle is the closest cycle vertex.
        let entry_pos = (0..on_cycle.len())
            .min_by_key(|&i| on_cycle[i])
            .expect("nonempty cycle");
        let mut cyc = on_cycle.clone();
        cyc.rotate_left(entry_pos);
        let mut prefix = Vec::new();
        let mut v = cyc[0];
        while let Some(p) = self.parent[v] {
            prefix.push(p);
            v = p;
        }
        prefix.reverse();
        let to_global = |xs: Vec<usize>| xs.into_iter().map(|x| self.vertices[x]).collect();
        LassoPlay::new(g, to_global(prefix), to_global(cyc)).expect("witness follows edges")
    }
}
