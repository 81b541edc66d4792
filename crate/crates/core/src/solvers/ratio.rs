use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::arena::{split_profile, Arena, Move};
use super::energy::{solve_energy, EnergySolution};
use super::{wrong, MinMaxInstance, SolveError, SolveResult};
use crate::ext::{scale_to_integers, ExtRational};
use crate::game::CostSpec;

/// Price-per-reward game.
///
/// Prices and rewards are scaled to integers; the value at each vertex is
/// then the ratio of a simple cycle, so its denominator is at most
/// `n · max|reward|`. Whether the value is at least `a/b` is decided exactly
/// by an energy game on the weights `b·price − a·reward`, and a
/// Stern–Brocot search over such thresholds pins the value down. Optimal
/// strategies come from the energy games at each value class.
pub fn solve_ratio(inst: &MinMaxInstance<'_>) -> Result<SolveResult, SolveError> {
    if inst.objective != CostSpec::RatioAverage {
        return Err(wrong("ratio", &inst.objective));
    }
    inst.check_objective()?;
    let g = inst.graph;
    let arena = Arena::from_instance(inst);
    let n = arena.len() as i128;
    let to_ints = |xs: Vec<BigRational>| {
        let (scale, ints) = scale_to_integers(&xs);
        let ints: Vec<i128> = ints
            .iter()
            .map(|x| x.to_i128().expect("scaled weights fit in 128 bits"))
            .collect();
        (scale, ints)
    };
    let (price_scale, prices) = to_ints(g.edges().iter().map(|e| e.price.clone()).collect());
    let (reward_scale, rewards) = to_ints(g.edges().iter().map(|e| e.reward.clone()).collect());
    let max_abs = |xs: &[i128]| xs.iter().map(|x| x.abs()).max().unwrap_or(0);
    let num_bound = n * max_abs(&prices);
    let den_bound = (n * max_abs(&rewards)).max(1);

    let mut oracle = Thresholds {
        arena: &arena,
        prices: &prices,
        rewards: &rewards,
        cache: HashMap::new(),
    };
    let scaled: Vec<(i128, i128)> = (0..arena.len())
        .map(|v| oracle.search(v, num_bound, den_bound))
        .collect();

    let mut classes: BTreeMap<(i128, i128), Vec<usize>> = BTreeMap::new();
    for (v, &s) in scaled.iter().enumerate() {
        classes.entry(s).or_default().push(v);
    }
    let mut profile: Vec<Move> = arena.out.iter().map(|o| o[0]).collect();
    for (&(a, b), members) in &classes {
        let w = oracle.weights(a, b);
        let neg: Vec<i128> = w.iter().map(|x| -x).collect();
        let for_max = solve_energy(&arena, &w, false);
        let for_min = solve_energy(&arena, &neg, true);
        for &v in members {
            let sol: &EnergySolution = if arena.min_side[v] { &for_min } else { &for_max };
            debug_assert!(sol.wins(v));
            profile[v] = sol.choice[v];
        }
    }

    let unscale = BigRational::new(reward_scale, price_scale);
    let values = scaled
        .iter()
        .map(|&(a, b)| ExtRational::Finite(BigRational::new(BigInt::from(a), BigInt::from(b)) * &unscale))
        .collect();
    let (sigma_min, sigma_max) = split_profile(&arena.min_side, &profile);
    Ok(SolveResult {
        values,
        sigma_min,
        sigma_max,
    })
}

struct Thresholds<'a> {
    arena: &'a Arena,
    prices: &'a [i128],
    rewards: &'a [i128],
    cache: HashMap<(i128, i128), Vec<bool>>,
}

impl Thresholds<'_> {
    fn weights(&self, a: i128, b: i128) -> Vec<i128> {
        self.prices
            .iter()
            .zip(self.rewards)
            .map(|(p, r)| b * p - a * r)
            .collect()
    }

    /// Whether the value at `v` is at least `a/b` (`b > 0`).
    fn at_least(&mut self, v: usize, a: i128, b: i128) -> bool {
        if !self.cache.contains_key(&(a, b)) {
            let w = self.weights(a, b);
            let sol = solve_energy(self.arena, &w, false);
            let wins = (0..self.arena.len()).map(|u| sol.wins(u)).collect();
            self.cache.insert((a, b), wins);
        }
        self.cache[&(a, b)][v]
    }

    /// The value at `v` as a fraction `a/b` with `0 < b <= den_bound`.
    fn search(&mut self, v: usize, num_bound: i128, den_bound: i128) -> (i128, i128) {
        let (mut lo, mut hi) = (-num_bound - 1, num_bound + 1);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.at_least(v, mid, 1) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // The value lies in [l, r); every fraction strictly between two
        // Stern–Brocot neighbours has denominator at least lb + rb.
        let (mut la, mut lb, mut ra, mut rb) = (lo, 1i128, lo + 1, 1i128);
        while lb + rb <= den_bound {
            if self.at_least(v, la + ra, lb + rb) {
                let jmax = (den_bound - lb) / rb;
                let j = last_true(jmax, |j| self.at_least(v, la + j * ra, lb + j * rb));
                la += j * ra;
                lb += j * rb;
            } else {
                let jmax = (den_bound - rb) / lb;
                let j = last_true(jmax, |j| !self.at_least(v, j * la + ra, j * lb + rb));
                ra += j * la;
                rb += j * lb;
            }
        }
        (la, lb)
    }
}

/// Largest `j` in `1..=jmax` with `pred(j)`, for a predicate that holds at
/// 1 and is monotone (true, then false). Gallops, then bisects.
fn last_true(jmax: i128, mut pred: impl FnMut(i128) -> bool) -> i128 {
    let mut lo = 1;
    let hi = loop {
        let next = lo * 2;
        if next > jmax {
            break jmax + 1;
        }
        if pred(next) {
            lo = next;
        } else {
            break next;
        }
    };
    let mut hi = hi;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
