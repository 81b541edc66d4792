//! Exact cost evaluation on lasso plays and prefix decomposition.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ext::{pow, ExtRational};
use crate::game::{CostSpec, GameGraph, History, LassoPlay, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CostError {
    #[error("non-diverging reward on this lasso")]
    NonDivergingReward,
    #[error("{0} is not cost-prefix-linear")]
    NotPrefixLinear(&'static str),
    #[error("lambda out of range (0,1)")]
    LambdaOutOfRange,
    #[error("path needs at least one edge")]
    NoEdges,
}

/// Coefficients with `cost(h·ρ) = a + b·cost(ρ)` for every play `ρ`
/// starting where `h` ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixCoefficients {
    pub a: BigRational,
    pub b: BigRational,
}

impl PrefixCoefficients {
    pub fn identity() -> Self {
        PrefixCoefficients {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    /// `a + b·x` with `0·(±∞) = 0`.
    pub fn apply(&self, x: &ExtRational) -> ExtRational {
        x.scale_nonneg(&self.b).add_finite(&self.a)
    }
}

/// Exact cost of an ultimately periodic play.
///
/// Max's gain functions (liminf variants) coincide with Min's on lassos,
/// so this one function evaluates both sides.
pub fn eval_lasso(spec: &CostSpec, play: &LassoPlay, g: &GameGraph) -> Result<ExtRational, CostError> {
    let k = play.prefix().len();
    let c = play.cycle().len();
    let edge = |i: usize| {
        let id = g
            .edge_between(play.vertex_at(i), play.vertex_at(i + 1))
            .expect("lasso follows edges of its graph");
        g.edge(id)
    };
    match spec {
        CostSpec::ReachabilityPrice { goal } => {
            let mut acc = BigRational::zero();
            for i in 0..k + c {
                if goal.contains(&play.vertex_at(i)) {
                    return Ok(ExtRational::Finite(acc));
                }
                acc += &edge(i).price;
            }
            Ok(ExtRational::PosInf)
        }
        CostSpec::DiscountedPrice { lambda } => {
            check_lambda(lambda)?;
            let one = BigRational::one();
            let mut pre = BigRational::zero();
            let mut weight = one.clone();
            for i in 0..k {
                pre += &weight * &edge(i).price;
                weight *= lambda;
            }
            let mut cyc = BigRational::zero();
            let mut cw = one.clone();
            for j in 0..c {
                cyc += &cw * &edge(k + j).price;
                cw *= lambda;
            }
            // weight = λ^k, cw = λ^c
            let total = pre + weight * cyc / (&one - cw);
            Ok(ExtRational::Finite((one - lambda) * total))
        }
        CostSpec::MeanPayoff => {
            let sum: BigRational = (k..k + c).map(|i| edge(i).price.clone()).sum();
            Ok(ExtRational::Finite(sum / BigRational::from_integer(c.into())))
        }
        CostSpec::RatioAverage => {
            let price: BigRational = (k..k + c).map(|i| edge(i).price.clone()).sum();
            let reward: BigRational = (k..k + c).map(|i| edge(i).reward.clone()).sum();
            if !reward.is_positive() {
                return Err(CostError::NonDivergingReward);
            }
            Ok(ExtRational::Finite(price / reward))
        }
        CostSpec::EnergySup { threshold } => {
            let cycle_sum: BigRational = (k..k + c).map(|i| edge(i).price.clone()).sum();
            if cycle_sum.is_positive() {
                return Ok(ExtRational::PosInf);
            }
            // With a nonpositive cycle sum, later partial sums never exceed
            // those seen within the prefix and one unrolling of the cycle.
            let mut acc = BigRational::zero();
            let mut sup = BigRational::zero();
            for i in 0..k + c {
                acc += &edge(i).price;
                if acc > sup {
                    sup = acc.clone();
                }
            }
            if sup <= *threshold {
                Ok(ExtRational::Finite(sup))
            } else {
                Ok(ExtRational::PosInf)
            }
        }
    }
}

/// Coefficients `(a, b)` of the history `h = h_0 … h_k`.
pub fn prefix_decompose(spec: &CostSpec, h: &History, g: &GameGraph) -> Result<PrefixCoefficients, CostError> {
    let vs = h.vertices();
    let price = |i: usize| {
        let id = g.edge_between(vs[i - 1], vs[i]).expect("history follows edges");
        &g.edge(id).price
    };
    match spec {
        CostSpec::ReachabilityPrice { goal } => {
            let mut a = BigRational::zero();
            for (i, v) in vs.iter().enumerate() {
                if i > 0 {
                    a += price(i);
                }
                if goal.contains(v) {
                    return Ok(PrefixCoefficients {
                        a,
                        b: BigRational::zero(),
                    });
                }
            }
            Ok(PrefixCoefficients {
                a,
                b: BigRational::one(),
            })
        }
        CostSpec::DiscountedPrice { lambda } => {
            check_lambda(lambda)?;
            let mut a = BigRational::zero();
            let mut weight = BigRational::one();
            for i in 1..vs.len() {
                a += &weight * price(i);
                weight *= lambda;
            }
            Ok(PrefixCoefficients {
                a: (BigRational::one() - lambda) * a,
                b: pow(lambda, vs.len() - 1),
            })
        }
        CostSpec::MeanPayoff | CostSpec::RatioAverage => Ok(PrefixCoefficients::identity()),
        CostSpec::EnergySup { .. } => Err(CostError::NotPrefixLinear("energy_sup")),
    }
}

/// Average edge price along a finite path.
pub fn partial_price_average(path: &History, g: &GameGraph) -> Result<BigRational, CostError> {
    let vs = path.vertices();
    if vs.len() < 2 {
        return Err(CostError::NoEdges);
    }
    let sum: BigRational = vs
        .windows(2)
        .map(|w| {
            g.edge(g.edge_between(w[0], w[1]).expect("history follows edges"))
                .price
                .clone()
        })
        .sum();
    Ok(sum / BigRational::from_integer((vs.len() - 1).into()))
}

/// Prefix of the play `A B A B² A² B⁴ A⁴ …` over two vertices `a`, `b`
/// (the blocks double in length), stopping after the `blocks`-th pair of
/// `b`-block and `a`-block, counted from zero.
///
/// Requires edges `a→b`, `b→b`, `b→a`, `a→a`.
pub fn oscillating_path(a: VertexId, b: VertexId, blocks: u32) -> Vec<VertexId> {
    let mut path = vec![a];
    for n in 0..=blocks {
        let len = 1usize << n;
        path.extend(std::iter::repeat_n(b, len));
        path.extend(std::iter::repeat_n(a, len));
    }
    path
}

fn check_lambda(lambda: &BigRational) -> Result<(), CostError> {
    if lambda.is_positive() && *lambda < BigRational::one() {
        Ok(())
    } else {
        Err(CostError::LambdaOutOfRange)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{int, ratio};
    use crate::fixtures;

    fn lasso(g: &GameGraph, text: &str) -> LassoPlay {
        LassoPlay::parse(g, text).unwrap()
    }

    #[test]
    fn reach_and_mean_costs() {
        let game = fixtures::reach_and_mean();
        let g = &game.graph;
        let p1 = game.objective(g.player("p1").unwrap());
        let p2 = game.objective(g.player("p2").unwrap());
        let ab = lasso(g, "A,B");
        assert_eq!(eval_lasso(p1, &ab, g).unwrap(), ExtRational::PosInf);
        assert_eq!(eval_lasso(p2, &ab, g).unwrap(), ExtRational::from_int(1));
        let abc = lasso(g, "A;B,C");
        assert_eq!(eval_lasso(p1, &abc, g).unwrap(), ExtRational::from_int(2));
        assert_eq!(eval_lasso(p2, &abc, g).unwrap(), ExtRational::from_int(2));
        let adbc = lasso(g, "A,D;B,C");
        assert_eq!(eval_lasso(p1, &adbc, g).unwrap(), ExtRational::from_int(6));
        assert_eq!(eval_lasso(p2, &adbc, g).unwrap(), ExtRational::from_int(2));
    }

    #[test]
    fn energy_sup_is_not_prefix_linear() {
        let game = fixtures::energy_loops();
        let g = &game.graph;
        let spec = game.objective(crate::game::PlayerId(0));
        let rho = lasso(g, "A,B");
        let h_rho = lasso(g, "A,A;A,B");
        assert_eq!(eval_lasso(spec, &rho, g).unwrap(), ExtRational::from_int(1));
        assert_eq!(eval_lasso(spec, &h_rho, g).unwrap(), ExtRational::PosInf);
        let h = History::from_names(g, &["A", "A", "A"]).unwrap();
        assert_eq!(
            prefix_decompose(spec, &h, g),
            Err(CostError::NotPrefixLinear("energy_sup"))
        );
    }

    #[test]
    fn constant_loop_discounts_to_its_price() {
        let g = GameGraph::builder()
            .player("p")
            .vertex("x", "p")
            .edge_with("x", "x", ratio(7, 3), int(1))
            .build()
            .unwrap();
        for lambda in [ratio(1, 2), ratio(9, 10), ratio(1, 7)] {
            let spec = CostSpec::DiscountedPrice { lambda };
            assert_eq!(
                eval_lasso(&spec, &lasso(&g, "x"), &g).unwrap(),
                ExtRational::ratio(7, 3)
            );
        }
    }

    #[test]
    fn decompositions_of_small_histories() {
        let game = fixtures::reach_and_mean();
        let g = &game.graph;
        let p1 = game.objective(g.player("p1").unwrap());
        let abc = History::from_names(g, &["A", "B", "C"]).unwrap();
        assert_eq!(
            prefix_decompose(p1, &abc, g).unwrap(),
            PrefixCoefficients { a: int(2), b: int(0) }
        );
        let ab = History::from_names(g, &["A", "B"]).unwrap();
        let dp = CostSpec::DiscountedPrice { lambda: ratio(1, 2) };
        assert_eq!(
            prefix_decompose(&dp, &ab, g).unwrap(),
            PrefixCoefficients {
                a: ratio(1, 2),
                b: ratio(1, 2)
            }
        );
        let a = History::from_names(g, &["A"]).unwrap();
        for spec in [p1.clone(), dp, CostSpec::MeanPayoff, CostSpec::RatioAverage] {
            assert_eq!(prefix_decompose(&spec, &a, g).unwrap(), PrefixCoefficients::identity());
        }
    }

    #[test]
    fn zero_price_path_averages_to_zero() {
        let g = GameGraph::builder()
            .player("p")
            .vertex("x", "p")
            .vertex("y", "p")
            .edge("x", "y", 0)
            .edge("y", "x", 0)
            .build()
            .unwrap();
        let h = History::from_names(&g, &["x", "y", "x", "y"]).unwrap();
        assert_eq!(partial_price_average(&h, &g).unwrap(), int(0));
        let single = History::from_names(&g, &["x"]).unwrap();
        assert_eq!(partial_price_average(&single, &g), Err(CostError::NoEdges));
    }

    #[test]
    fn ratio_rejects_nonpositive_cycle_reward() {
        let g = GameGraph::builder()
            .player("p")
            .vertex("x", "p")
            .edge_with("x", "x", int(1), int(0))
            .build()
            .unwrap();
        assert_eq!(
            eval_lasso(&CostSpec::RatioAverage, &lasso(&g, "x"), &g),
            Err(CostError::NonDivergingReward)
        );
    }
}
