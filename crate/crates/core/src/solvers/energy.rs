use std::collections::VecDeque;

use super::arena::{Arena, Move};

/// Least progress measure of an energy game: the minimal initial credit
/// with which the energy player keeps every running sum of weights above
/// zero (`None` when no finite credit suffices), and a positional strategy
/// for the energy player that realizes it.
pub(crate) struct EnergySolution {
    pub credit: Vec<Option<i128>>,
    pub choice: Vec<Move>,
}

impl EnergySolution {
    pub fn wins(&self, v: usize) -> bool {
        self.credit[v].is_some()
    }
}

/// Credit needed at the source of `weight` when the target needs `after`.
fn need(after: Option<i128>, weight: i128, bound: i128) -> Option<i128> {
    let x = (after? - weight).max(0);
    (x <= bound).then_some(x)
}

/// `None` stands for the top element.
fn worse(a: Option<i128>, b: Option<i128>) -> bool {
    match (a, b) {
        (None, None) => false,
        (None, Some(_)) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => x > y,
    }
}

/// Worklist lifting (small progress measures). Weights are indexed by edge
/// id.
pub(crate) fn solve_energy(arena: &Arena, weights: &[i128], energy_is_min: bool) -> EnergySolution {
    let n = arena.len();
    let bound: i128 = arena
        .out
        .iter()
        .map(|moves| moves.iter().map(|mv| -weights[mv.edge]).max().unwrap_or(0).max(0))
        .sum();
    let pred = arena.predecessors();
    let mut credit: Vec<Option<i128>> = vec![Some(0); n];
    let mut queued = vec![true; n];
    let mut queue: VecDeque<usize> = (0..n).collect();
    let lift = |credit: &[Option<i128>], v: usize| -> Option<i128> {
        let mut needs = arena.out[v]
            .iter()
            .map(|mv| need(credit[mv.to], weights[mv.edge], bound));
        let first = needs.next().expect("no sinks");
        if (arena.min_side[v]) == energy_is_min {
            needs.fold(first, |acc, x| if worse(acc, x) { x } else { acc })
        } else {
            needs.fold(first, |acc, x| if worse(x, acc) { x } else { acc })
        }
    };
    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        if credit[v].is_none() {
            continue;
        }
        let lifted = lift(&credit, v);
        if worse(lifted, credit[v]) {
            credit[v] = lifted;
            for &p in &pred[v] {
                if !queued[p] {
                    queued[p] = true;
                    queue.push_back(p);
                }
            }
        }
    }
    let choice = (0..n)
        .map(|v| {
            let moves = &arena.out[v];
            match credit[v] {
                Some(c) if arena.min_side[v] == energy_is_min => *moves
                    .iter()
                    .find(|mv| need(credit[mv.to], weights[mv.edge], bound).is_some_and(|x| x <= c))
                    .expect("a finite measure is witnessed by some move"),
                _ => moves[0],
            }
        })
        .collect();
    EnergySolution { credit, choice }
}
