use num_rational::BigRational;
use num_traits::One;

use super::arena::{functional_values, split_profile, Arena, Move};
use super::{wrong, MinMaxInstance, SolveError, SolveResult};
use crate::ext::{pow, rational_to_f64, ExtRational};
use crate::game::{CostSpec, GameGraph};

#[derive(Clone, Debug, PartialEq)]
pub enum DiscountedMode {
    /// Strategy iteration with exact rational values.
    Exact,
    /// Floating-point value iteration to precision `epsilon`, then exact
    /// values of the extracted strategy profile.
    Approx { epsilon: f64 },
}

pub fn solve_discounted(inst: &MinMaxInstance<'_>, mode: DiscountedMode) -> Result<SolveResult, SolveError> {
    let CostSpec::DiscountedPrice { lambda } = &inst.objective else {
        return Err(wrong("discounted", &inst.objective));
    };
    inst.check_objective()?;
    let arena = Arena::from_instance(inst);
    let d = Discounted {
        g: inst.graph,
        lambda: lambda.clone(),
    };
    let profile = match mode {
        DiscountedMode::Exact => {
            let values = d.strategy_iteration(&arena);
            d.greedy(&arena, &values)
        }
        DiscountedMode::Approx { epsilon } => d.value_iteration(&arena, epsilon),
    };
    let values = d.profile_values(&profile);
    let (sigma_min, sigma_max) = split_profile(&arena.min_side, &profile);
    Ok(SolveResult {
        values: values.into_iter().map(ExtRational::Finite).collect(),
        sigma_min,
        sigma_max,
    })
}

struct Discounted<'g> {
    g: &'g GameGraph,
    lambda: BigRational,
}

impl Discounted<'_> {
    fn price(&self, mv: &Move) -> &BigRational {
        &self.g.edges()[mv.edge].price
    }

    /// `(1-λ)·price + λ·value(target)`
    fn q(&self, mv: &Move, values: &[BigRational]) -> BigRational {
        (BigRational::one() - &self.lambda) * self.price(mv) + &self.lambda * &values[mv.to]
    }

    /// Exact values of a positional profile, cycle by cycle.
    fn profile_values(&self, profile: &[Move]) -> Vec<BigRational> {
        let succ: Vec<usize> = profile.iter().map(|m| m.to).collect();
        let one = BigRational::one();
        let lam = &self.lambda;
        functional_values(
            &succ,
            |cycle| {
                let m = cycle.len();
                let mut sum = BigRational::from_integer(0.into());
                let mut w = one.clone();
                for &c in cycle {
                    sum += &w * self.price(&profile[c]);
                    w *= lam;
                }
                let first = (&one - lam) * sum / (&one - pow(lam, m));
                let mut vals = vec![first.clone(); m];
                let mut next = first;
                for i in (1..m).rev() {
                    let x = (&one - lam) * self.price(&profile[cycle[i]]) + lam * &next;
                    vals[i] = x.clone();
                    next = x;
                }
                vals
            },
            |u, next| (&one - lam) * self.price(&profile[u]) + lam * next,
        )
    }

    /// Lowest-index move optimal for its owner against `values`.
    fn greedy(&self, arena: &Arena, values: &[BigRational]) -> Vec<Move> {
        (0..arena.len())
            .map(|v| {
                let mut best = arena.out[v][0];
                let mut best_q = self.q(&best, values);
                for mv in &arena.out[v][1..] {
                    let x = self.q(mv, values);
                    if (arena.min_side[v] && x < best_q) || (!arena.min_side[v] && x > best_q) {
                        best = *mv;
                        best_q = x;
                    }
                }
                best
            })
            .collect()
    }

    /// Improves `profile` in place at the vertices of one side; returns
    /// whether anything changed. A move is replaced only on strict
    /// improvement.
    fn improve(&self, arena: &Arena, profile: &mut [Move], values: &[BigRational], min_side: bool) -> bool {
        let greedy = self.greedy(arena, values);
        let mut changed = false;
        for v in 0..arena.len() {
            if arena.min_side[v] != min_side {
                continue;
            }
            let cur = self.q(&profile[v], values);
            let cand = self.q(&greedy[v], values);
            let better = if min_side { cand < cur } else { cand > cur };
            if better {
                profile[v] = greedy[v];
                changed = true;
            }
        }
        changed
    }

    /// Min improves against Max's best response, which is itself found by
    /// one-sided strategy iteration.
    fn strategy_iteration(&self, arena: &Arena) -> Vec<BigRational> {
        let mut profile: Vec<Move> = arena.out.iter().map(|o| o[0]).collect();
        loop {
            let values = loop {
                let values = self.profile_values(&profile);
                if !self.improve(arena, &mut profile, &values, false) {
                    break values;
                }
            };
            if !self.improve(arena, &mut profile, &values, true) {
                return values;
            }
        }
    }

    fn value_iteration(&self, arena: &Arena, epsilon: f64) -> Vec<Move> {
        let lam = rational_to_f64(&self.lambda);
        let prices: Vec<f64> = self.g.edges().iter().map(|e| rational_to_f64(&e.price)).collect();
        let stop = epsilon * (1.0 - lam) / (2.0 * lam);
        let q = |mv: &Move, x: &[f64]| (1.0 - lam) * prices[mv.edge] + lam * x[mv.to];
        let mut x = vec![0.0; arena.len()];
        loop {
            let next: Vec<f64> = (0..arena.len())
                .map(|v| {
                    let it = arena.out[v].iter().map(|mv| q(mv, &x));
                    if arena.min_side[v] {
                        it.fold(f64::INFINITY, f64::min)
                    } else {
                        it.fold(f64::NEG_INFINITY, f64::max)
                    }
                })
                .collect();
            let residual = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            x = next;
            if residual < stop {
                break;
            }
        }
        (0..arena.len())
            .map(|v| {
                let mut best = arena.out[v][0];
                for mv in &arena.out[v][1..] {
                    let (a, b) = (q(mv, &x), q(&best, &x));
                    if (arena.min_side[v] && a < b) || (!arena.min_side[v] && a > b) {
                        best = *mv;
                    }
                }
                best
            })
            .collect()
    }
}
