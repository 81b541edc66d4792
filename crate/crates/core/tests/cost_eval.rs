mod common;

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use quantgame::cost::{eval_lasso, oscillating_path, partial_price_average, prefix_decompose, CostError};
use quantgame::ext::{int, ratio, rational_to_f64, ExtRational};
use quantgame::fixtures;
use quantgame::game::{CostSpec, GameGraph, History, LassoPlay, VertexId};
use quantgame::gen::{random_game, random_spec, GenConfig, ObjectiveKind};
use rand::Rng;

fn lasso(g: &GameGraph, text: &str) -> LassoPlay {
    LassoPlay::parse(g, text).unwrap()
}

fn price(g: &GameGraph, from: VertexId, to: VertexId) -> &BigRational {
    &g.edge(g.edge_between(from, to).unwrap()).price
}

#[test]
fn sample_game_costs() {
    let game = fixtures::reach_and_mean();
    let g = &game.graph;
    let reach = CostSpec::reachability([g.vertex("C").unwrap()]);
    let cases = [
        ("(A,B)", ExtRational::PosInf, 1),
        ("A;(B,C)", ExtRational::from_int(2), 2),
        ("A,D;(B,C)", ExtRational::from_int(6), 2),
    ];
    for (text, rp, mp) in cases {
        let play = lasso(g, text);
        assert_eq!(eval_lasso(&reach, &play, g).unwrap(), rp, "{text}");
        assert_eq!(
            eval_lasso(&CostSpec::MeanPayoff, &play, g).unwrap(),
            ExtRational::from_int(mp),
            "{text}"
        );
    }
}

#[test]
fn sample_game_decompositions() {
    let game = fixtures::reach_and_mean();
    let g = &game.graph;
    let reach = CostSpec::reachability([g.vertex("C").unwrap()]);
    let abc = History::from_names(g, &["A", "B", "C"]).unwrap();
    let d = prefix_decompose(&reach, &abc, g).unwrap();
    assert_eq!((d.a, d.b), (int(2), int(0)));

    let ab = History::from_names(g, &["A", "B"]).unwrap();
    let half = CostSpec::DiscountedPrice { lambda: ratio(1, 2) };
    let d = prefix_decompose(&half, &ab, g).unwrap();
    assert_eq!((d.a, d.b), (ratio(1, 2), ratio(1, 2)));

    let d = prefix_decompose(&CostSpec::MeanPayoff, &abc, g).unwrap();
    assert_eq!((d.a, d.b), (int(0), int(1)));

    let single = History::from_names(g, &["B"]).unwrap();
    for spec in [reach, half, CostSpec::MeanPayoff, CostSpec::RatioAverage] {
        let d = prefix_decompose(&spec, &single, g).unwrap();
        assert_eq!((d.a, d.b), (int(0), int(1)));
    }
}

#[test]
fn energy_is_not_prefix_linear() {
    let game = fixtures::energy_loops();
    let g = &game.graph;
    let spec = game.objectives.values().next().unwrap().clone();
    let rho = lasso(g, "(A,B)");
    let h = History::from_names(g, &["A", "A", "A"]).unwrap();
    assert_eq!(eval_lasso(&spec, &rho, g).unwrap(), ExtRational::from_int(1));
    let shifted = h.then(&rho).unwrap();
    assert_eq!(shifted, LassoPlay::from_names(g, &["A", "A"], &["A", "B"]).unwrap());
    assert_eq!(eval_lasso(&spec, &shifted, g).unwrap(), ExtRational::PosInf);
    assert_eq!(
        prefix_decompose(&spec, &h, g),
        Err(CostError::NotPrefixLinear("energy_sup"))
    );
}

#[test]
fn ratio_needs_positive_cycle_reward() {
    let g = GameGraph::builder()
        .player("p")
        .vertex("a", "p")
        .edge_with("a", "a", int(1), int(0))
        .build()
        .unwrap();
    let play = lasso(&g, "(a)");
    assert_eq!(
        eval_lasso(&CostSpec::RatioAverage, &play, &g),
        Err(CostError::NonDivergingReward)
    );
}

#[test]
fn lambda_is_checked() {
    let game = fixtures::two_loops();
    let g = &game.graph;
    let play = lasso(g, "(A)");
    for bad in [int(0), int(1), ratio(3, 2), ratio(-1, 2)] {
        let spec = CostSpec::DiscountedPrice { lambda: bad };
        assert_eq!(eval_lasso(&spec, &play, g), Err(CostError::LambdaOutOfRange));
    }
}

/// Reachability cost by walking the play edge by edge.
fn walk_reachability(goal: &[VertexId], play: &LassoPlay, g: &GameGraph) -> ExtRational {
    let vs = play.unroll(play.span() + 1);
    let mut acc = BigRational::zero();
    for w in vs.windows(2) {
        if goal.contains(&w[0]) {
            return ExtRational::Finite(acc);
        }
        acc += price(g, w[0], w[1]);
    }
    ExtRational::PosInf
}

#[test]
fn prefix_linearity_on_random_cases() {
    let mut rng = common::rng(11);
    for kind in ObjectiveKind::ALL {
        let cfg = GenConfig {
            vertices: 1..=6,
            players: 1..=1,
            kinds: vec![kind],
            ..GenConfig::default()
        };
        for _ in 0..1000 {
            let game = random_game(&mut rng, &cfg);
            let g = &game.graph;
            let spec = random_spec(&mut rng, kind, g.num_vertices());
            let edges = rng.gen_range(0..8);
            let h = common::random_history(&mut rng, g, game.initial, edges);
            let rho = common::random_lasso(&mut rng, g, h.last());
            let whole = h.then(&rho).unwrap();
            let d = prefix_decompose(&spec, &h, g).unwrap();
            assert!(d.b >= BigRational::zero());
            let lhs = eval_lasso(&spec, &whole, g).unwrap();
            let rhs = d.apply(&eval_lasso(&spec, &rho, g).unwrap());
            assert_eq!(
                lhs,
                rhs,
                "{spec:?} h={} rho={}",
                g.name_list(h.vertices()),
                rho.display(g)
            );

            if let CostSpec::ReachabilityPrice { goal } = &spec {
                let goal: Vec<VertexId> = goal.iter().copied().collect();
                assert_eq!(lhs, walk_reachability(&goal, &whole, g));
            }
        }
    }
}

#[test]
fn discounted_value_matches_truncated_sum() {
    let mut rng = common::rng(12);
    let cfg = GenConfig {
        players: 1..=1,
        kinds: vec![ObjectiveKind::Discounted],
        ..GenConfig::default()
    };
    for _ in 0..200 {
        let game = random_game(&mut rng, &cfg);
        let g = &game.graph;
        let spec = random_spec(&mut rng, ObjectiveKind::Discounted, g.num_vertices());
        let CostSpec::DiscountedPrice { lambda } = &spec else {
            unreachable!()
        };
        let lambda = rational_to_f64(lambda);
        let play = common::random_lasso(&mut rng, g, game.initial);
        let vs = play.unroll(201);
        let mut sum = 0.0;
        let mut weight = 1.0 - lambda;
        for w in vs.windows(2) {
            sum += weight * rational_to_f64(price(g, w[0], w[1]));
            weight *= lambda;
        }
        let exact = eval_lasso(&spec, &play, g).unwrap().to_f64();
        assert!((exact - sum).abs() < 1e-9, "{exact} vs {sum}");
    }
}

#[test]
fn mean_payoff_ignores_the_prefix() {
    let mut rng = common::rng(13);
    let cfg = GenConfig {
        players: 1..=1,
        kinds: vec![ObjectiveKind::MeanPayoff],
        ..GenConfig::default()
    };
    for _ in 0..300 {
        let game = random_game(&mut rng, &cfg);
        let g = &game.graph;
        let play = common::random_lasso(&mut rng, g, game.initial);
        let cycle_only = LassoPlay::new(g, vec![], play.cycle().to_vec()).unwrap();
        let full = eval_lasso(&CostSpec::MeanPayoff, &play, g).unwrap();
        assert_eq!(full, eval_lasso(&CostSpec::MeanPayoff, &cycle_only, g).unwrap());

        // long finite averages approach the value
        let k = play.prefix().len();
        let c = play.cycle().len();
        let far = History::new(g, play.unroll(k + 400 * c + 1)).unwrap();
        let avg = rational_to_f64(&partial_price_average(&far, g).unwrap());
        assert!((avg - full.to_f64()).abs() <= 5.0 * k as f64 / (k + 400 * c) as f64 + 1e-12);
    }
}

#[test]
fn oscillating_averages() {
    let g = GameGraph::builder()
        .player("p")
        .vertex("a", "p")
        .vertex("b", "p")
        .edge("a", "b", 1)
        .edge("b", "b", 1)
        .edge("b", "a", 0)
        .edge("a", "a", 0)
        .build()
        .unwrap();
    let (a, b) = (VertexId(0), VertexId(1));
    for n in 1..=12u32 {
        let path = oscillating_path(a, b, n);
        // ones then zeros, block n of each has length 2^n
        let mut expected = vec![a];
        for m in 0..=n {
            for _ in 0..1usize << m {
                expected.push(b);
            }
            for _ in 0..1usize << m {
                expected.push(a);
            }
        }
        assert_eq!(path, expected);

        let p = 1i64 << n;
        let after_ones = History::new(&g, path[..path.len() - p as usize].to_vec()).unwrap();
        let high = partial_price_average(&after_ones, &g).unwrap();
        assert_eq!(high, ratio(2 * p - 1, 3 * p - 2));
        let after_zeros = History::new(&g, path).unwrap();
        assert_eq!(partial_price_average(&after_zeros, &g).unwrap(), ratio(1, 2));
        if n == 10 {
            assert_eq!(high, ratio(2047, 3070));
        }
        if n == 12 {
            assert!((rational_to_f64(&high) - 2.0 / 3.0).abs() < 1e-3);
        }
    }
    let flat = History::new(&g, vec![a, a, a]).unwrap();
    assert!(partial_price_average(&flat, &g).unwrap().is_zero());
    assert_eq!(
        partial_price_average(&History::new(&g, vec![a]).unwrap(), &g),
        Err(CostError::NoEdges)
    );
}

proptest! {
    #[test]
    fn constant_loop_discounts_to_its_price(p in -50i64..50, num in 1i64..20, extra in 1i64..20) {
        let g = GameGraph::builder()
            .player("p")
            .vertex("a", "p")
            .edge("a", "a", p)
            .build()
            .unwrap();
        let spec = CostSpec::DiscountedPrice { lambda: ratio(num, num + extra) };
        let play = LassoPlay::parse(&g, "(a)").unwrap();
        prop_assert_eq!(eval_lasso(&spec, &play, &g).unwrap(), ExtRational::from_int(p));
    }

    #[test]
    fn zero_scale_absorbs_infinity(a in -20i64..20) {
        let d = quantgame::cost::PrefixCoefficients { a: int(a), b: BigRational::zero() };
        prop_assert_eq!(d.apply(&ExtRational::PosInf), ExtRational::from_int(a));
        let id = quantgame::cost::PrefixCoefficients { a: int(a), b: BigRational::one() };
        prop_assert_eq!(id.apply(&ExtRational::PosInf), ExtRational::PosInf);
    }
}
