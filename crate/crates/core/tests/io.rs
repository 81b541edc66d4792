mod common;

use quantgame::equilibrium::{synthesize_ne, Overrides};
use quantgame::fixtures;
use quantgame::game::PlayerId;
use quantgame::gen::{random_game, GenConfig};
use quantgame::io::{
    automaton_from_document, automaton_to_document, export_automaton_dot, export_dot, parse_game, parse_profile,
    profile_to_json, serialize_game, Highlight,
};

const SAMPLE: &str = include_str!("../fixtures/reach_and_mean.json");

fn errors_of(text: &str) -> Vec<(String, String)> {
    parse_game(text.as_bytes())
        .unwrap_err()
        .0
        .into_iter()
        .map(|e| (e.path, e.message))
        .collect()
}

#[test]
fn sample_document_parses() {
    let game = parse_game(SAMPLE.as_bytes()).unwrap();
    assert_eq!(game.graph.num_vertices(), 4);
    assert_eq!(game.graph.edges().len(), 6);
    assert_eq!(game.objectives.len(), 2);
    assert_eq!(game, fixtures::reach_and_mean());
}

#[test]
fn lambda_outside_the_unit_interval() {
    let text = SAMPLE.replace(
        r#""p2": {"type": "mean_payoff"}"#,
        r#""p2": {"type": "discounted", "lambda": "3/2"}"#,
    );
    let errors = errors_of(&text);
    assert_eq!(errors.len(), 1);
    assert_eq!(errors[0].1, "lambda out of range (0,1)");
    assert!(errors[0].0.starts_with(".objectives.p2"), "{errors:?}");
}

#[test]
fn duplicate_edge_points_at_the_second_copy() {
    let text = SAMPLE.replace(
        r#"{"from": "D", "to": "B", "price": 3}"#,
        r#"{"from": "D", "to": "B", "price": 3},
    {"from": "A", "to": "B", "price": 5}"#,
    );
    let errors = errors_of(&text);
    assert_eq!(errors.len(), 1, "{errors:?}");
    assert_eq!(errors[0].0, ".edges[6]");
    assert!(errors[0].1.contains("duplicate"), "{errors:?}");
}

#[test]
fn malformed_documents() {
    assert_eq!(errors_of("{").len(), 1);
    let unknown = SAMPLE.replace("mean_payoff", "median_payoff");
    assert!(errors_of(&unknown)[0].0.starts_with(".objectives.p2"));
    let float = SAMPLE.replace(r#""price": 2}"#, r#""price": 2.5}"#);
    assert_eq!(errors_of(&float)[0].0, ".edges[1].price");
    let bad_rational = SAMPLE.replace(r#""price": 2}"#, r#""price": "2/0"}"#);
    assert_eq!(errors_of(&bad_rational)[0].0, ".edges[1].price");
    let extra = SAMPLE.replace(r#""initial": "A","#, r#""initial": "A", "colour": "red","#);
    assert_eq!(errors_of(&extra).len(), 1);
}

#[test]
fn serialize_then_parse_is_identity() {
    let mut rng = common::rng(21);
    let cfg = GenConfig {
        players: 1..=4,
        vertices: 1..=8,
        ..GenConfig::default()
    };
    let mut games: Vec<_> = (0..200).map(|_| random_game(&mut rng, &cfg)).collect();
    games.extend([
        fixtures::reach_and_mean(),
        fixtures::energy_loops(),
        fixtures::two_loops(),
    ]);
    for game in games {
        let text = serialize_game(&game);
        let back = parse_game(text.as_bytes()).unwrap();
        assert_eq!(back, game);
        assert_eq!(serialize_game(&back), text);
    }
}

#[test]
fn game_dot_shapes_labels_and_shading() {
    let game = fixtures::reach_and_mean();
    let g = &game.graph;
    let plain = export_dot(g, &Highlight::default());
    assert_eq!(plain.matches("shape=").count(), 4);
    assert_eq!(plain.matches(" -> ").count(), 6);
    assert_eq!(plain.matches("shape=circle").count(), 3);
    assert!(plain.contains(r#""B" [shape=box];"#));
    assert!(plain.contains(r#""A" -> "D" [label="2"];"#));
    assert!(!plain.contains("filled"));

    let shaded = export_dot(
        g,
        &Highlight {
            shaded: [g.vertex("C").unwrap()].into(),
            play: None,
        },
    );
    assert_eq!(shaded.matches("filled").count(), 1);
    assert!(shaded.contains(r#""C" [shape=circle, style=filled, fillcolor=lightgray];"#));
    assert_eq!(export_dot(g, &Highlight::default()), plain);
}

#[test]
fn automaton_dot_uses_vertex_labels() {
    let game = fixtures::reach_and_mean();
    let g = &game.graph;
    let ne = synthesize_ne(g, &game.objectives, game.initial, &Overrides::new()).unwrap();
    let dot = export_automaton_dot(g, &ne.automata[&PlayerId(0)], game.initial);
    assert_eq!(dot.matches("[shape=circle]").count(), 5);
    assert!(dot.contains(r#""BC" -> "p2" [label="A/D"];"#));
    assert!(dot.contains("label=\"B/\u{2212}\""));
}

#[test]
fn profiles_round_trip() {
    for game in common::equilibrium_games(22, 40) {
        let g = &game.graph;
        let ne = synthesize_ne(g, &game.objectives, game.initial, &Overrides::new()).unwrap();
        let text = serde_json::to_string(&profile_to_json(g, &ne.automata)).unwrap();
        assert_eq!(parse_profile(g, text.as_bytes()).unwrap(), ne.automata);
        for (&p, a) in &ne.automata {
            let doc = automaton_to_document(g, a);
            assert_eq!(&automaton_from_document(g, p, &doc, ".").unwrap(), a);
        }
    }
}

#[test]
fn profile_errors_are_located() {
    let game = fixtures::reach_and_mean();
    let g = &game.graph;
    let text = r#"{"automata": {"p1": {"states": ["m"], "initial": "m", "advice": {"m": {"A": "C"}}}}}"#;
    let errors = parse_profile(g, text.as_bytes()).unwrap_err().0;
    let paths: Vec<&str> = errors.iter().map(|e| e.path.as_str()).collect();
    assert!(paths.contains(&".automata.p1.advice.m.A"), "{errors:?}");
    assert!(paths.contains(&".automata"), "{errors:?}");
}
