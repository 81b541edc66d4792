use std::collections::BTreeSet;

use super::arena::Arena;
use super::MinMaxInstance;
use crate::game::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Min,
    Max,
}

/// Vertices from which `side` can force a visit to `target`.
pub fn attractor(inst: &MinMaxInstance<'_>, target: &BTreeSet<VertexId>, side: Side) -> BTreeSet<VertexId> {
    let arena = Arena::from_instance(inst);
    let mut in_target = vec![false; arena.len()];
    for v in target {
        in_target[v.0] = true;
    }
    attract(&arena, &in_target, side == Side::Min)
        .into_iter()
        .enumerate()
        .filter(|&(_, x)| x)
        .map(|(v, _)| VertexId(v))
        .collect()
}

/// Backward fixpoint with successor counters.
pub(crate) fn attract(arena: &Arena, target: &[bool], forcing_is_min: bool) -> Vec<bool> {
    let n = arena.len();
    let pred = arena.predecessors();
    let mut inside = target.to_vec();
    let mut remaining: Vec<usize> = arena.out.iter().map(Vec::len).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
    while let Some(u) = queue.pop() {
        for &p in &pred[u] {
            if inside[p] {
                continue;
            }
            let forcing = arena.min_side[p] == forcing_is_min;
            let hits = arena.out[p].iter().filter(|m| m.to == u).count();
            remaining[p] -= hits;
            if forcing || remaining[p] == 0 {
                inside[p] = true;
                queue.push(p);
            }
        }
    }
    inside
}
