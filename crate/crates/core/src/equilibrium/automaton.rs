use std::collections::{BTreeMap, BTreeSet};

use super::EquilibriumError;
use crate::game::{GameGraph, LassoPlay, PlayerId, PositionalStrategy, StrategyAutomaton, VertexId};

/// One position of the agreed play: its vertex and the memory of the
/// player's own optimal strategy on arrival there.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Step {
    pub vertex: VertexId,
    pub own_memory: usize,
}

/// Equilibrium automaton of `player` for the outcome `rho` of a positional
/// profile.
///
/// Edge states `v0v0, v0v1, …, v(n−1)vn, vnvk` track the last edge of the
/// play (the first one means the play has not started); reading the vertex
/// the state expects moves one edge further. Any other vertex is a
/// deviation by the owner of the edge's source, who is then punished
/// forever by `punish[owner]`. Deviation is detected on the edge taken, so
/// leaving the play towards a vertex that lies on it is still caught.
pub fn build_strategy_automaton(
    g: &GameGraph,
    player: PlayerId,
    rho: &LassoPlay,
    sigma: &PositionalStrategy,
    punish: &BTreeMap<PlayerId, PositionalStrategy>,
) -> Result<StrategyAutomaton, EquilibriumError> {
    let positions: Vec<VertexId> = rho.positions().collect();
    let distinct: BTreeSet<VertexId> = positions.iter().copied().collect();
    if distinct.len() != positions.len() {
        return Err(EquilibriumError::RepeatedVertex(rho.display(g)));
    }
    let k = rho.prefix().len();
    for (l, &v) in positions.iter().enumerate() {
        let next = positions.get(l + 1).copied().unwrap_or(positions[k]);
        if g.owner(v) == player && sigma.get(v) != Some(next) {
            return Err(EquilibriumError::InconsistentPlay {
                player: g.player_name(player).to_string(),
                vertex: g.vertex_name(v).to_string(),
            });
        }
    }
    let own = StrategyAutomaton::positional(g, player, sigma)?;
    let mut punishers = BTreeMap::new();
    for (&j, s) in punish {
        punishers.insert(j, StrategyAutomaton::positional(g, player, s)?);
    }
    let steps: Vec<Step> = positions
        .into_iter()
        .map(|vertex| Step { vertex, own_memory: 0 })
        .collect();
    assemble(g, player, &steps, k, &own, &punishers)
}

/// Builds the automaton from the positions of the agreed play (pairwise
/// distinct as product states, looping back to `steps[k]`), the player's
/// own optimal strategy and their punishment strategies.
///
/// A punishment strategy starts from scratch at the vertex where the
/// deviation happened. A deviation by the player themself is not punished:
/// the state is kept and the own strategy keeps advising.
pub(crate) fn assemble(
    g: &GameGraph,
    player: PlayerId,
    steps: &[Step],
    k: usize,
    own: &StrategyAutomaton,
    punish: &BTreeMap<PlayerId, StrategyAutomaton>,
) -> Result<StrategyAutomaton, EquilibriumError> {
    for j in g.players().filter(|&j| j != player) {
        if !punish.contains_key(&j) {
            return Err(EquilibriumError::MissingPunishment {
                player: g.player_name(player).to_string(),
                against: g.player_name(j).to_string(),
            });
        }
    }
    let n = steps.len() - 1;
    // With a single position the states v0v0 and vnvk coincide.
    let edge_states = if n == 0 { 1 } else { n + 2 };
    let expects = |e: usize| match e {
        0 => 0,
        e if e <= n => e,
        _ => k,
    };
    let source = |e: usize| steps[e.saturating_sub(1).min(n)].vertex;
    let advance = |e: usize| {
        let p = expects(e);
        if p < n {
            p + 1
        } else if n == 0 {
            0
        } else {
            n + 1
        }
    };

    let mut labels: Vec<String> = (0..edge_states)
        .map(|e| pair_label(g, source(e), steps[expects(e)].vertex))
        .collect();
    let mut offset = BTreeMap::new();
    for (&j, a) in punish.iter().filter(|(&j, _)| j != player) {
        offset.insert(j, labels.len());
        let name = g.player_name(j);
        if a.num_states() == 1 {
            labels.push(name.to_string());
        } else {
            labels.extend(a.labels.iter().map(|q| format!("{name}:{q}")));
        }
    }
    let labels = unique(&mut labels);

    let total = labels.len();
    let mut update = vec![vec![0; g.num_vertices()]; total];
    let mut advice = vec![vec![None; g.num_vertices()]; total];
    let mine = |v: VertexId| g.owner(v) == player;
    for e in 0..edge_states {
        let step = steps[expects(e)];
        let u1 = source(e);
        for v in g.vertices() {
            let deviator = g.owner(u1);
            let (next, adv) = if v == step.vertex {
                (advance(e), own.advise(step.own_memory, v))
            } else if deviator == player {
                (e, own.advise(step.own_memory, v))
            } else {
                let a = &punish[&deviator];
                let q = a.step(a.initial, u1);
                (offset[&deviator] + a.step(q, v), a.advise(q, v))
            };
            update[e][v.0] = next;
            advice[e][v.0] = if mine(v) { adv } else { None };
        }
    }
    for (&j, &base) in &offset {
        let a = &punish[&j];
        for q in 0..a.num_states() {
            for v in g.vertices() {
                update[base + q][v.0] = base + a.step(q, v);
                advice[base + q][v.0] = if mine(v) { a.advise(q, v) } else { None };
            }
        }
    }
    let automaton = StrategyAutomaton {
        player,
        labels,
        initial: 0,
        update,
        advice,
    };
    automaton.check(g)?;
    Ok(automaton)
}

fn pair_label(g: &GameGraph, u: VertexId, v: VertexId) -> String {
    let (a, b) = (g.vertex_name(u), g.vertex_name(v));
    if a.chars().count() == 1 && b.chars().count() == 1 {
        format!("{a}{b}")
    } else {
        format!("{a}_{b}")
    }
}

/// Primes repeated labels until all are distinct.
fn unique(labels: &mut [String]) -> Vec<String> {
    let mut seen = BTreeSet::new();
    labels
        .iter()
        .map(|l| {
            let mut l = l.clone();
            while !seen.insert(l.clone()) {
                l.push('\'');
            }
            l
        })
        .collect()
}
