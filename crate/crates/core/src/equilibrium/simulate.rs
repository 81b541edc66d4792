use std::collections::{BTreeMap, HashMap};

use super::{check_automata, EquilibriumError};
use crate::game::{GameError, GameGraph, LassoPlay, PlayerId, StrategyAutomaton, VertexId};

/// Positions of the joint run: vertex and every player's memory on
/// arrival. The run loops back from the last position to `steps[loop_start]`.
pub(crate) struct ProductRun {
    pub steps: Vec<(VertexId, Vec<usize>)>,
    pub loop_start: usize,
}

impl ProductRun {
    pub fn play(&self, g: &GameGraph) -> Result<LassoPlay, GameError> {
        let vs: Vec<VertexId> = self.steps.iter().map(|(v, _)| *v).collect();
        LassoPlay::new(g, vs[..self.loop_start].to_vec(), vs[self.loop_start..].to_vec())
    }
}

/// Runs the automata (indexed by player) from `v0` until a product state
/// repeats.
pub(crate) fn simulate(
    g: &GameGraph,
    automata: &[&StrategyAutomaton],
    v0: VertexId,
) -> Result<ProductRun, EquilibriumError> {
    let mut seen: HashMap<(VertexId, Vec<usize>), usize> = HashMap::new();
    let mut steps = Vec::new();
    let mut v = v0;
    let mut mem: Vec<usize> = automata.iter().map(|a| a.initial).collect();
    loop {
        if let Some(&start) = seen.get(&(v, mem.clone())) {
            return Ok(ProductRun {
                steps,
                loop_start: start,
            });
        }
        seen.insert((v, mem.clone()), steps.len());
        steps.push((v, mem.clone()));
        let owner = g.owner(v).0;
        let next = automata[owner]
            .advise(mem[owner], v)
            .ok_or_else(|| GameError::MissingChoice(g.vertex_name(v).to_string()))?;
        for (m, a) in mem.iter_mut().zip(automata) {
            *m = a.step(*m, v);
        }
        v = next;
    }
}

/// Outcome of a profile of strategy automata from `v0`.
pub fn outcome_of(
    g: &GameGraph,
    automata: &BTreeMap<PlayerId, StrategyAutomaton>,
    v0: VertexId,
) -> Result<LassoPlay, EquilibriumError> {
    check_automata(g, automata)?;
    let ordered: Vec<&StrategyAutomaton> = g.players().map(|p| &automata[&p]).collect();
    Ok(simulate(g, &ordered, v0)?.play(g)?)
}
