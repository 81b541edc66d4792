use num_rational::BigRational;
use num_traits::Zero;

use super::arena::{split_profile, Arena, Move};
use super::attractor::attract;
use super::{wrong, MinMaxInstance, SolveError, SolveResult};
use crate::ext::ExtRational;
use crate::game::CostSpec;

/// Reachability-price game with nonnegative prices, by generalized Dijkstra
/// over Min's attractor of the goal.
///
/// Vertices are finalized in nondecreasing value order. A Min vertex is
/// ready once some successor is final; a Max vertex only once all of them
/// are. Both strategies point to vertices finalized earlier, so their
/// outcome reaches the goal.
pub fn solve_reachability_price(inst: &MinMaxInstance<'_>) -> Result<SolveResult, SolveError> {
    let CostSpec::ReachabilityPrice { goal } = &inst.objective else {
        return Err(wrong("reachability_price", &inst.objective));
    };
    inst.check_objective()?;
    let g = inst.graph;
    let arena = Arena::from_instance(inst);
    let n = arena.len();
    let mut is_goal = vec![false; n];
    for v in goal {
        is_goal[v.0] = true;
    }
    let attr = attract(&arena, &is_goal, true);
    let price = |mv: &Move| &g.edges()[mv.edge].price;

    let mut value: Vec<Option<BigRational>> = vec![None; n];
    let mut choice: Vec<Option<Move>> = vec![None; n];
    for v in 0..n {
        if is_goal[v] {
            value[v] = Some(BigRational::zero());
        }
    }
    loop {
        // Pick the ready vertex with the smallest candidate value (lowest
        // index on ties) and finalize it.
        let mut best: Option<(usize, BigRational, Move)> = None;
        for v in 0..n {
            if value[v].is_some() || !attr[v] {
                continue;
            }
            let cand = if arena.min_side[v] {
                arena.out[v]
                    .iter()
                    .filter_map(|mv| value[mv.to].as_ref().map(|x| (x + price(mv), *mv)))
                    .fold(None, |acc: Option<(BigRational, Move)>, (x, mv)| {
                        if acc.as_ref().is_some_and(|(b, _)| *b <= x) {
                            acc
                        } else {
                            Some((x, mv))
                        }
                    })
            } else if arena.out[v].iter().all(|mv| value[mv.to].is_some()) {
                arena.out[v]
                    .iter()
                    .map(|mv| (value[mv.to].as_ref().unwrap() + price(mv), *mv))
                    .fold(None, |acc: Option<(BigRational, Move)>, (x, mv)| {
                        if acc.as_ref().is_some_and(|(b, _)| *b >= x) {
                            acc
                        } else {
                            Some((x, mv))
                        }
                    })
            } else {
                None
            };
            if let Some((x, mv)) = cand {
                if best.as_ref().is_none_or(|(_, b, _)| x < *b) {
                    best = Some((v, x, mv));
                }
            }
        }
        let Some((v, x, mv)) = best else { break };
        value[v] = Some(x);
        choice[v] = Some(mv);
    }

    // Goal vertices and vertices outside the attractor still need moves.
    let mut profile = Vec::with_capacity(n);
    for v in 0..n {
        let mv = match choice[v] {
            Some(mv) => mv,
            None if attr[v] => arena.out[v][0],
            None if arena.min_side[v] => arena.out[v][0],
            None => *arena.out[v].iter().find(|mv| !attr[mv.to]).unwrap_or(&arena.out[v][0]),
        };
        profile.push(mv);
    }
    let values = value
        .into_iter()
        .map(|x| x.map_or(ExtRational::PosInf, ExtRational::Finite))
        .collect();
    let (sigma_min, sigma_max) = split_profile(&arena.min_side, &profile);
    Ok(SolveResult {
        values,
        sigma_min,
        sigma_max,
    })
}
