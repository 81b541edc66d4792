use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::arena::{split_profile, Arena, Move};
use super::{wrong, MinMaxInstance, SolveError, SolveResult};
use crate::ext::{scale_to_integers, ExtRational};
use crate::game::CostSpec;

/// Mean-payoff game solved exactly by finite-horizon value iteration and
/// rational rounding; strategies by edge fixing.
pub fn solve_mean_payoff(inst: &MinMaxInstance<'_>) -> Result<SolveResult, SolveError> {
    if inst.objective != CostSpec::MeanPayoff {
        return Err(wrong("mean_payoff", &inst.objective));
    }
    let arena = Arena::from_instance(inst);
    let prices: Vec<BigRational> = inst.graph.edges().iter().map(|e| e.price.clone()).collect();
    let (scale, weights) = scale_to_integers(&prices);
    let weights: Vec<i128> = weights
        .iter()
        .map(|w| w.to_i128().expect("scaled prices fit in 128 bits"))
        .collect();
    let values = horizon_values(&arena, &weights);
    let profile = edge_fixing(&arena, &values, |a| horizon_values(a, &weights));
    let (sigma_min, sigma_max) = split_profile(&arena.min_side, &profile);
    let scale = BigRational::from_integer(scale);
    Ok(SolveResult {
        values: values.into_iter().map(|x| ExtRational::Finite(x / &scale)).collect(),
        sigma_min,
        sigma_max,
    })
}

/// Exact values for integer weights: `ν_T / T` with `T = 4n³W`, rounded to
/// the unique rational with denominator at most `n` within `2nW/T`.
pub(crate) fn horizon_values(arena: &Arena, weights: &[i128]) -> Vec<BigRational> {
    let n = arena.len();
    let w_max = arena
        .out
        .iter()
        .flatten()
        .map(|mv| weights[mv.edge].abs())
        .max()
        .unwrap_or(0);
    if w_max == 0 {
        return vec![BigRational::from_integer(0.into()); n];
    }
    let nn = n as i128;
    let horizon = 4 * nn * nn * nn * w_max;
    let mut nu = vec![0i128; n];
    let mut next = vec![0i128; n];
    for _ in 0..horizon {
        for v in 0..n {
            let it = arena.out[v].iter().map(|mv| weights[mv.edge] + nu[mv.to]);
            next[v] = if arena.min_side[v] {
                it.min().unwrap()
            } else {
                it.max().unwrap()
            };
        }
        std::mem::swap(&mut nu, &mut next);
    }
    nu.iter()
        .map(|&total| round_to_small_denominator(total, horizon, nn, w_max))
        .collect()
}

fn round_to_small_denominator(total: i128, horizon: i128, n: i128, w_max: i128) -> BigRational {
    for q in 1..=n {
        // nearest integer to total·q / horizon
        let p = (2 * total * q + horizon).div_euclid(2 * horizon);
        if (p * horizon - total * q).abs() <= 2 * n * w_max * q {
            return BigRational::new(BigInt::from(p), BigInt::from(q));
        }
    }
    unreachable!("finite-horizon estimate lies within 2nW/T of a rational with denominator <= n")
}

/// For each vertex of each side, keeps the first move whose pinning leaves
/// every value unchanged. Each side is fixed on the original arena.
pub(crate) fn edge_fixing(
    arena: &Arena,
    values: &[BigRational],
    solve: impl Fn(&Arena) -> Vec<BigRational>,
) -> Vec<Move> {
    let n = arena.len();
    let mut profile: Vec<Option<Move>> = vec![None; n];
    for side in [true, false] {
        let mut current = arena.clone();
        for v in 0..n {
            if arena.min_side[v] != side {
                continue;
            }
            if current.out[v].len() == 1 {
                profile[v] = Some(current.out[v][0]);
                continue;
            }
            let candidates: Vec<Move> = current.out[v]
                .iter()
                .filter(|mv| values[mv.to] == values[v])
                .copied()
                .collect();
            let mut fixed = None;
            for mv in candidates {
                let pinned = current.pinned(v, mv);
                if solve(&pinned) == values {
                    fixed = Some((mv, pinned));
                    break;
                }
            }
            let (mv, pinned) = fixed.expect("some optimal move preserves all values");
            profile[v] = Some(mv);
            current = pinned;
        }
    }
    profile.into_iter().map(|m| m.expect("every vertex fixed")).collect()
}
