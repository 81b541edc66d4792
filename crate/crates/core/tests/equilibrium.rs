mod common;

use std::collections::BTreeMap;

use quantgame::equilibrium::{
    build_strategy_automaton, outcome_of, synthesize_ne, synthesize_ne_general, verify_ne, EquilibriumError,
    NashProfile, Overrides, PlayerStrategies,
};
use quantgame::ext::ExtRational;
use quantgame::fixtures;
use quantgame::game::{Game, GameGraph, LassoPlay, PlayerId, PositionalStrategy, StrategyAutomaton, VertexId};
use quantgame::io::automaton_transitions;
use rand::Rng;

fn v(g: &GameGraph, name: &str) -> VertexId {
    g.vertex(name).unwrap()
}

fn synth(game: &Game) -> NashProfile {
    synthesize_ne(&game.graph, &game.objectives, game.initial, &Overrides::new()).unwrap()
}

#[test]
fn sample_game_equilibrium() {
    let game = fixtures::reach_and_mean();
    let g = &game.graph;
    let ne = synth(&game);
    assert_eq!(ne.outcome.display(g), "A;(B,C)");
    assert_eq!(ne.costs[&PlayerId(0)], ExtRational::from_int(2));
    assert_eq!(ne.costs[&PlayerId(1)], ExtRational::from_int(2));
    assert_eq!(ne.values[&PlayerId(0)], ExtRational::PosInf);
    assert_eq!(ne.values[&PlayerId(1)], ExtRational::from_int(2));
    assert_eq!(outcome_of(g, &ne.automata, game.initial).unwrap(), ne.outcome);
    assert!(verify_ne(g, &game.objectives, &ne.automata, game.initial)
        .unwrap()
        .is_equilibrium());
}

#[test]
fn override_changes_the_agreed_play() {
    let game = fixtures::reach_and_mean();
    let g = &game.graph;
    let sigma = PositionalStrategy::new(g, [(v(g, "A"), v(g, "D"))].into()).unwrap();
    let ne = synthesize_ne(g, &game.objectives, game.initial, &[(PlayerId(0), sigma)].into()).unwrap();
    assert_eq!(ne.outcome.display(g), "A,D;(B,C)");
    assert_eq!(ne.costs[&PlayerId(0)], ExtRational::from_int(6));
    assert_eq!(ne.costs[&PlayerId(1)], ExtRational::from_int(2));
    assert!(verify_ne(g, &game.objectives, &ne.automata, game.initial)
        .unwrap()
        .is_equilibrium());
}

#[test]
fn suboptimal_override_is_rejected_with_the_gap() {
    let chain = GameGraph::builder()
        .player("p")
        .player("q")
        .vertex("s", "p")
        .vertex("a", "q")
        .vertex("b", "q")
        .edge("s", "a", 1)
        .edge("s", "b", 5)
        .edge("a", "a", 0)
        .edge("b", "b", 0)
        .build()
        .unwrap();
    let goal = quantgame::game::CostSpec::reachability([v(&chain, "a"), v(&chain, "b")]);
    let specs = [(PlayerId(0), goal.clone()), (PlayerId(1), goal)].into();
    let bad = PositionalStrategy::new(&chain, [(v(&chain, "s"), v(&chain, "b"))].into()).unwrap();
    let err = synthesize_ne(&chain, &specs, v(&chain, "s"), &[(PlayerId(0), bad)].into()).unwrap_err();
    assert_eq!(
        err,
        EquilibriumError::OverrideNotOptimal {
            player: "p".into(),
            vertex: "s".into(),
            value: ExtRational::from_int(1),
            achieved: ExtRational::from_int(5),
        }
    );

    let foreign = PositionalStrategy::new(&chain, [(v(&chain, "a"), v(&chain, "a"))].into()).unwrap();
    assert!(matches!(
        synthesize_ne(&chain, &specs, v(&chain, "s"), &[(PlayerId(0), foreign)].into()),
        Err(EquilibriumError::OverrideOutsidePlayer { .. })
    ));
}

#[test]
fn player_one_automaton_has_the_expected_transitions() {
    let game = fixtures::reach_and_mean();
    let g = &game.graph;
    let a = &synth(&game).automata[&PlayerId(0)];
    assert_eq!(a.labels, ["AA", "AB", "BC", "CB", "p2"]);
    let shown: Vec<(String, String, String)> = automaton_transitions(g, a, game.initial)
        .into_iter()
        .map(|t| (a.labels[t.from].clone(), t.label(g), a.labels[t.to].clone()))
        .collect();
    let expected = [
        ("AA", "A/B", "AB"),
        ("AB", "B/\u{2212}", "BC"),
        ("BC", "C/B", "CB"),
        ("BC", "A/D", "p2"),
        ("CB", "B/\u{2212}", "BC"),
        ("p2", "A/D", "p2"),
    ];
    let expected: Vec<(String, String, String)> = expected
        .iter()
        .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
        .collect();
    assert_eq!(shown, expected);
}

#[test]
fn no_punishment_profile_is_flagged() {
    let game = fixtures::reach_and_mean();
    let g = &game.graph;
    let p1 = PositionalStrategy::new(
        g,
        [(v(g, "A"), v(g, "B")), (v(g, "C"), v(g, "B")), (v(g, "D"), v(g, "B"))].into(),
    )
    .unwrap();
    let p2 = PositionalStrategy::new(g, [(v(g, "B"), v(g, "C"))].into()).unwrap();
    let automata: BTreeMap<PlayerId, StrategyAutomaton> = [
        (PlayerId(0), StrategyAutomaton::positional(g, PlayerId(0), &p1).unwrap()),
        (PlayerId(1), StrategyAutomaton::positional(g, PlayerId(1), &p2).unwrap()),
    ]
    .into();
    let report = verify_ne(g, &game.objectives, &automata, game.initial).unwrap();
    assert!(!report.is_equilibrium());
    let p2_check = &report.players[&PlayerId(1)];
    assert!(p2_check.profitable);
    assert_eq!(p2_check.best_response, ExtRational::from_int(1));
    assert_eq!(p2_check.outcome_cost, ExtRational::from_int(2));
    let witness = p2_check.witness.as_ref().unwrap();
    assert_eq!(witness.cycle(), [v(g, "A"), v(g, "B")]);
    assert!(!report.players[&PlayerId(0)].profitable);
}

#[test]
fn one_player_game_has_no_punishment_states() {
    let game = fixtures::two_loops();
    let ne = synth(&game);
    let a = &ne.automata[&PlayerId(0)];
    assert_eq!(ne.outcome, LassoPlay::parse(&game.graph, "A").unwrap());
    assert_eq!(a.num_states(), 1);
    let report = verify_ne(&game.graph, &game.objectives, &ne.automata, game.initial).unwrap();
    let check = &report.players[&PlayerId(0)];
    assert_eq!(check.best_response, ne.values[&PlayerId(0)]);
    assert_eq!(check.outcome_cost, check.best_response);
}

#[test]
fn automaton_requires_a_consistent_simple_play() {
    let game = fixtures::reach_and_mean();
    let g = &game.graph;
    let sigma = PositionalStrategy::new(
        g,
        [(v(g, "A"), v(g, "D")), (v(g, "C"), v(g, "B")), (v(g, "D"), v(g, "B"))].into(),
    )
    .unwrap();
    let rho = LassoPlay::parse(g, "A;B,C").unwrap();
    let punish = [(PlayerId(1), sigma.clone())].into();
    assert!(matches!(
        build_strategy_automaton(g, PlayerId(0), &rho, &sigma, &punish),
        Err(EquilibriumError::InconsistentPlay { .. })
    ));
    let looping = LassoPlay::parse(g, "A;B,A,D,B,C").unwrap();
    assert!(matches!(
        build_strategy_automaton(g, PlayerId(0), &looping, &sigma, &punish),
        Err(EquilibriumError::RepeatedVertex(_))
    ));
}

#[test]
fn outcome_of_self_loops_and_products() {
    let g = GameGraph::builder()
        .player("p")
        .vertex("a", "p")
        .edge("a", "a", 0)
        .build()
        .unwrap();
    let sigma = PositionalStrategy::new(&g, [(VertexId(0), VertexId(0))].into()).unwrap();
    let a = StrategyAutomaton::positional(&g, PlayerId(0), &sigma).unwrap();
    let play = outcome_of(&g, &[(PlayerId(0), a)].into(), VertexId(0)).unwrap();
    assert_eq!(play.display(&g), "(a)");

    // a 3-state counter driving a 4-cycle with shortcuts
    let g = GameGraph::builder()
        .player("p")
        .vertex("a", "p")
        .vertex("b", "p")
        .vertex("c", "p")
        .vertex("d", "p")
        .edge("a", "b", 0)
        .edge("a", "c", 0)
        .edge("b", "c", 0)
        .edge("c", "d", 0)
        .edge("c", "a", 0)
        .edge("d", "a", 0)
        .build()
        .unwrap();
    let n = g.num_vertices();
    let advice = |m: usize| {
        (0..n)
            .map(|x| {
                let targets: Vec<VertexId> = g.successors(VertexId(x)).collect();
                Some(targets[m % targets.len()])
            })
            .collect()
    };
    let counter = StrategyAutomaton {
        player: PlayerId(0),
        labels: vec!["0".into(), "1".into(), "2".into()],
        initial: 0,
        update: (0..3).map(|m| vec![(m + 1) % 3; n]).collect(),
        advice: (0..3).map(advice).collect(),
    };
    let play = outcome_of(&g, &[(PlayerId(0), counter)].into(), VertexId(0)).unwrap();
    assert!(play.span() <= 12, "{}", play.display(&g));
}

/// Direct reading of the equilibrium strategy: follow the agreed play
/// while everybody does, otherwise play the punishment against the first
/// player who left it.
fn reference_choice(
    g: &GameGraph,
    rho: &LassoPlay,
    strategies: &PlayerStrategies,
    history: &[VertexId],
) -> Option<VertexId> {
    let last = *history.last().unwrap();
    let deviator = (1..history.len())
        .find(|&t| history[t] != rho.vertex_at(t))
        .map(|t| g.owner(history[t - 1]));
    let sigma = match deviator {
        None => strategies.optimal.as_positional().unwrap(),
        Some(j) => strategies.punish[&j].as_positional().unwrap(),
    };
    sigma.get(last)
}

#[test]
fn automata_agree_with_the_reference_strategy() {
    let mut rng = common::rng(7);
    let games = common::equilibrium_games(70, 40);
    let mut checked = 0;
    for game in &games {
        let g = &game.graph;
        let ne = synth(game);
        for (&i, a) in &ne.automata {
            let strategies = &ne.provenance[&i];
            for _ in 0..25 {
                // random history in which player i follows the reference
                let mut history = vec![game.initial];
                for _ in 0..rng.gen_range(0..14) {
                    let last = *history.last().unwrap();
                    let next = if g.owner(last) == i {
                        let expected = reference_choice(g, &ne.outcome, strategies, &history).unwrap();
                        assert_eq!(a.choose(&history), Some(expected), "history {}", g.name_list(&history));
                        checked += 1;
                        expected
                    } else {
                        let succ: Vec<VertexId> = g.successors(last).collect();
                        succ[rng.gen_range(0..succ.len())]
                    };
                    history.push(next);
                }
            }
        }
    }
    assert!(checked > 1000, "only {checked} decisions compared");
}

#[test]
fn random_profiles_respect_the_memory_bound_and_are_equilibria() {
    for game in common::equilibrium_games(71, 100) {
        let g = &game.graph;
        let ne = synth(&game);
        for a in ne.automata.values() {
            assert!(a.num_states() <= g.num_vertices() + g.num_players());
        }
        let report = verify_ne(g, &game.objectives, &ne.automata, game.initial).unwrap();
        assert_eq!(report.outcome, ne.outcome);
        for (p, c) in &report.players {
            assert!(
                !c.profitable,
                "player {} gains {} -> {}",
                g.player_name(*p),
                c.outcome_cost,
                c.best_response
            );
            assert_eq!(c.outcome_cost, ne.costs[p]);
        }
    }
}

#[test]
fn one_state_supplies_reproduce_the_positional_construction() {
    for game in common::equilibrium_games(72, 30) {
        let ne = synth(&game);
        let general = synthesize_ne_general(&game.graph, &game.objectives, game.initial, &ne.provenance).unwrap();
        assert_eq!(general, ne);
    }
    let game = fixtures::reach_and_mean();
    let ne = synth(&game);
    let general = synthesize_ne_general(&game.graph, &game.objectives, game.initial, &ne.provenance).unwrap();
    assert_eq!(general.outcome.display(&game.graph), "A;(B,C)");
}

#[test]
fn redundant_memory_keeps_the_outcome_and_the_general_bound() {
    for game in common::equilibrium_games(73, 40) {
        let g = &game.graph;
        let ne = synth(&game);
        let doubled: BTreeMap<PlayerId, PlayerStrategies> = ne
            .provenance
            .iter()
            .map(|(&p, s)| {
                (
                    p,
                    PlayerStrategies {
                        optimal: common::with_redundant_state(&s.optimal),
                        punish: s
                            .punish
                            .iter()
                            .map(|(&j, a)| (j, common::with_redundant_state(a)))
                            .collect(),
                    },
                )
            })
            .collect();
        let general = synthesize_ne_general(g, &game.objectives, game.initial, &doubled).unwrap();
        assert_eq!(general.outcome, ne.outcome);
        assert_eq!(general.costs, ne.costs);
        let own: usize = doubled.values().map(|s| s.optimal.num_states()).product();
        for (i, a) in &general.automata {
            let punishers: usize = doubled[i].punish.values().map(StrategyAutomaton::num_states).sum();
            assert!(a.num_states() <= g.num_vertices() * own + punishers);
        }
        let report = verify_ne(g, &game.objectives, &general.automata, game.initial).unwrap();
        assert!(report.is_equilibrium());
    }
}
