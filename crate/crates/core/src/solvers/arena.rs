use std::collections::BTreeMap;

use super::MinMaxInstance;
use crate::game::{GameGraph, PositionalStrategy, VertexId};

/// One allowed move: the target vertex and the id of the edge used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Move {
    pub to: usize,
    pub edge: usize,
}

/// Index-based view of a two-sided arena. Moves keep the input edge order,
/// and a vertex may be pinned to a single move.
#[derive(Clone, Debug)]
pub(crate) struct Arena {
    pub min_side: Vec<bool>,
    pub out: Vec<Vec<Move>>,
}

impl Arena {
    pub fn new(g: &GameGraph, min_side: Vec<bool>) -> Self {
        let out = g
            .vertices()
            .map(|v| {
                g.out_edges(v)
                    .iter()
                    .map(|&e| Move {
                        to: g.edge(e).to.0,
                        edge: e.0,
                    })
                    .collect()
            })
            .collect();
        Arena { min_side, out }
    }

    pub fn from_instance(inst: &MinMaxInstance<'_>) -> Self {
        Arena::new(inst.graph, inst.min_side.clone())
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn pinned(&self, v: usize, mv: Move) -> Self {
        let mut a = self.clone();
        a.out[v] = vec![mv];
        a
    }

    /// Predecessor lists over allowed moves, as `(source, move index)`.
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.len()];
        for (v, moves) in self.out.iter().enumerate() {
            for mv in moves {
                if !pred[mv.to].contains(&v) {
                    pred[mv.to].push(v);
                }
            }
        }
        pred
    }
}

/// Splits a full choice vector into the Min and Max strategies.
pub(crate) fn split_profile(min_side: &[bool], choice: &[Move]) -> (PositionalStrategy, PositionalStrategy) {
    let mut min = BTreeMap::new();
    let mut max = BTreeMap::new();
    for (v, mv) in choice.iter().enumerate() {
        let side = if min_side[v] { &mut min } else { &mut max };
        side.insert(VertexId(v), VertexId(mv.to));
    }
    (
        PositionalStrategy::from_map_unchecked(min),
        PositionalStrategy::from_map_unchecked(max),
    )
}

/// Prefix and cycle of the walk from `v` in a functional graph.
pub(crate) fn lasso_from(succ: &[usize], v: usize) -> (Vec<usize>, Vec<usize>) {
    let mut seen = vec![usize::MAX; succ.len()];
    let mut path = Vec::new();
    let mut u = v;
    while seen[u] == usize::MAX {
        seen[u] = path.len();
        path.push(u);
        u = succ[u];
    }
    let cycle = path.split_off(seen[u]);
    (path, cycle)
}

/// Evaluates every vertex of a functional graph: `on_cycle` assigns values
/// to the vertices of each cycle (given in walk order), and `back` derives
/// a vertex's value from its successor's.
pub(crate) fn functional_values<T>(
    succ: &[usize],
    mut on_cycle: impl FnMut(&[usize]) -> Vec<T>,
    mut back: impl FnMut(usize, &T) -> T,
) -> Vec<T> {
    let n = succ.len();
    let mut val: Vec<Option<T>> = (0..n).map(|_| None).collect();
    // 0 = unseen, 1 = on the current walk, 2 = done
    let mut state = vec![0u8; n];
    for s in 0..n {
        if state[s] != 0 {
            continue;
        }
        let mut stack = Vec::new();
        let mut v = s;
        while state[v] == 0 {
            state[v] = 1;
            stack.push(v);
            v = succ[v];
        }
        if state[v] == 1 {
            let pos = stack.iter().position(|&x| x == v).expect("walk contains its cycle");
            let cycle = stack.split_off(pos);
            for (c, x) in cycle.iter().zip(on_cycle(&cycle)) {
                val[*c] = Some(x);
                state[*c] = 2;
            }
        }
        while let Some(u) = stack.pop() {
            let x = back(u, val[succ[u]].as_ref().expect("successor evaluated first"));
            val[u] = Some(x);
            state[u] = 2;
        }
    }
    val.into_iter().map(|x| x.expect("every vertex evaluated")).collect()
}
