use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use super::document::{DocumentError, ParseErrors};
use crate::equilibrium::NashProfile;
use crate::ext::ExtRational;
use crate::game::{GameGraph, PlayerId, StrategyAutomaton};

/// One automaton as written in a profile document. Missing updates keep
/// the current state; missing advice is only allowed where the vertex has
/// a single successor.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDocument {
    pub states: Vec<String>,
    pub initial: String,
    #[serde(default)]
    pub update: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub advice: BTreeMap<String, BTreeMap<String, String>>,
}

/// Other top-level keys (outcome, costs, ...) are ignored, so the output of
/// `synthesize --emit-json` can be fed back to `verify`.
#[derive(Deserialize)]
struct RawProfile {
    automata: BTreeMap<String, AutomatonDocument>,
}

pub fn parse_profile(g: &GameGraph, document: &[u8]) -> Result<BTreeMap<PlayerId, StrategyAutomaton>, ParseErrors> {
    let mut de = serde_json::Deserializer::from_slice(document);
    let raw: RawProfile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        ParseErrors(vec![DocumentError {
            path: format!(".{}", e.path()),
            message: e.into_inner().to_string(),
        }])
    })?;
    let mut errors = Vec::new();
    let mut automata = BTreeMap::new();
    for (name, doc) in &raw.automata {
        let path = format!(".automata.{name}");
        let Some(p) = g.player(name) else {
            errors.push(DocumentError {
                path,
                message: format!("unknown player {name}"),
            });
            continue;
        };
        match automaton_from_document(g, p, doc, &path) {
            Ok(a) => {
                automata.insert(p, a);
            }
            Err(mut es) => errors.append(&mut es),
        }
    }
    for p in g.players() {
        if !automata.contains_key(&p) && !raw.automata.contains_key(g.player_name(p)) {
            errors.push(DocumentError {
                path: ".automata".into(),
                message: format!("no automaton for player {}", g.player_name(p)),
            });
        }
    }
    if errors.is_empty() {
        Ok(automata)
    } else {
        Err(ParseErrors(errors))
    }
}

pub fn automaton_from_document(
    g: &GameGraph,
    player: PlayerId,
    doc: &AutomatonDocument,
    path: &str,
) -> Result<StrategyAutomaton, Vec<DocumentError>> {
    let mut errors = Vec::new();
    let mut err = |path: String, message: String| errors.push(DocumentError { path, message });
    let index: BTreeMap<&str, usize> = doc.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if doc.states.is_empty() {
        err(format!("{path}.states"), "no states".into());
    }
    if index.len() != doc.states.len() {
        err(format!("{path}.states"), "duplicate state".into());
    }
    let initial = index.get(doc.initial.as_str()).copied().unwrap_or_else(|| {
        err(format!("{path}.initial"), format!("unknown state {}", doc.initial));
        0
    });
    let k = doc.states.len();
    let n = g.num_vertices();
    let mut update: Vec<Vec<usize>> = (0..k).map(|m| vec![m; n]).collect();
    let mut advice = vec![vec![None; n]; k];
    for (state, row) in &doc.update {
        let Some(&m) = index.get(state.as_str()) else {
            err(format!("{path}.update.{state}"), format!("unknown state {state}"));
            continue;
        };
        for (vertex, target) in row {
            let here = format!("{path}.update.{state}.{vertex}");
            match (g.vertex(vertex), index.get(target.as_str())) {
                (Some(v), Some(&t)) => update[m][v.0] = t,
                (None, _) => err(here, format!("unknown vertex {vertex}")),
                (_, None) => err(here, format!("unknown state {target}")),
            }
        }
    }
    for (state, row) in &doc.advice {
        let Some(&m) = index.get(state.as_str()) else {
            err(format!("{path}.advice.{state}"), format!("unknown state {state}"));
            continue;
        };
        for (vertex, target) in row {
            let here = format!("{path}.advice.{state}.{vertex}");
            match (g.vertex(vertex), g.vertex(target)) {
                (Some(v), Some(_)) if g.owner(v) != player => {
                    err(here, format!("{vertex} does not belong to {}", g.player_name(player)))
                }
                (Some(v), Some(t)) if g.has_edge(v, t) => advice[m][v.0] = Some(t),
                (Some(_), Some(_)) => err(here, format!("no edge {vertex} -> {target}")),
                (None, _) => err(here, format!("unknown vertex {vertex}")),
                (_, None) => err(here, format!("unknown vertex {target}")),
            }
        }
    }
    for (m, row) in advice.iter_mut().enumerate() {
        for v in g.vertices_of(player) {
            if row[v.0].is_some() {
                continue;
            }
            let succ: Vec<_> = g.successors(v).collect();
            if succ.len() == 1 {
                row[v.0] = Some(succ[0]);
            } else {
                err(
                    format!("{path}.advice.{}", doc.states[m]),
                    format!("no advice at {}, which has several successors", g.vertex_name(v)),
                );
            }
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    let a = StrategyAutomaton {
        player,
        labels: doc.states.clone(),
        initial,
        update,
        advice,
    };
    a.check(g).map_err(|e| {
        vec![DocumentError {
            path: path.to_string(),
            message: e.to_string(),
        }]
    })?;
    Ok(a)
}

/// Explicit tables for every state, vertex and owned vertex.
pub fn automaton_to_document(g: &GameGraph, a: &StrategyAutomaton) -> AutomatonDocument {
    let mut update = BTreeMap::new();
    let mut advice = BTreeMap::new();
    for (m, label) in a.labels.iter().enumerate() {
        let row: BTreeMap<String, String> = g
            .vertices()
            .map(|v| (g.vertex_name(v).to_string(), a.labels[a.step(m, v)].clone()))
            .collect();
        update.insert(label.clone(), row);
        let row: BTreeMap<String, String> = g
            .vertices()
            .filter_map(|v| {
                a.advise(m, v)
                    .map(|t| (g.vertex_name(v).to_string(), g.vertex_name(t).to_string()))
            })
            .collect();
        advice.insert(label.clone(), row);
    }
    AutomatonDocument {
        states: a.labels.clone(),
        initial: a.labels[a.initial].clone(),
        update,
        advice,
    }
}

pub fn profile_to_json(g: &GameGraph, automata: &BTreeMap<PlayerId, StrategyAutomaton>) -> Value {
    let map: Map<String, Value> = automata
        .iter()
        .map(|(&p, a)| {
            let doc = serde_json::to_value(automaton_to_document(g, a)).expect("documents serialize");
            (g.player_name(p).to_string(), doc)
        })
        .collect();
    json!({ "automata": map })
}

/// The full synthesis result; `verify` reads back its `automata` key.
pub fn nash_profile_to_json(g: &GameGraph, profile: &NashProfile) -> Value {
    let by_player = |m: &BTreeMap<PlayerId, ExtRational>| -> Map<String, Value> {
        m.iter()
            .map(|(&p, x)| (g.player_name(p).to_string(), json!(x.to_string())))
            .collect()
    };
    let mut doc = profile_to_json(g, &profile.automata);
    let obj = doc.as_object_mut().expect("object");
    obj.insert("outcome".into(), json!(profile.outcome.display(g)));
    obj.insert("costs".into(), Value::Object(by_player(&profile.costs)));
    obj.insert("values".into(), Value::Object(by_player(&profile.values)));
    doc
}
