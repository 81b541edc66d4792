use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::ext::{format_rational, parse_rational};
use crate::game::{CostSpec, Edge, Game, GameGraph, Objectives, PlayerId, VertexId};

/// A problem in a game document, located by a JSON path such as
/// `.edges[3].price`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct DocumentError {
    pub path: String,
    pub message: String,
}

/// Every problem found in a document.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseErrors(pub Vec<DocumentError>);

impl fmt::Display for ParseErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&lines.join("\n"))
    }
}

impl ParseErrors {
    fn single(path: impl Into<String>, message: impl Into<String>) -> Self {
        ParseErrors(vec![DocumentError {
            path: path.into(),
            message: message.into(),
        }])
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGame {
    players: Vec<String>,
    vertices: Vec<RawVertex>,
    edges: Vec<RawEdge>,
    initial: String,
    objectives: BTreeMap<String, RawObjective>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    id: String,
    owner: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    from: String,
    to: String,
    price: RationalText,
    #[serde(default)]
    reward: Option<RationalText>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawObjective {
    #[serde(rename = "type")]
    kind: String,
    #[serde(default)]
    goal: Option<Vec<String>>,
    #[serde(default)]
    lambda: Option<RationalText>,
    #[serde(default)]
    threshold: Option<RationalText>,
}

/// A rational given as a JSON integer or a string; floats are refused.
struct RationalText(String);

impl<'de> Deserialize<'de> for RationalText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RationalText;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a \"num/den\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                Ok(RationalText(v.to_string()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                Ok(RationalText(v.to_string()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                Ok(RationalText(v.to_string()))
            }
        }
        d.deserialize_any(V)
    }
}

/// Parses a game document, reporting every semantic problem found (JSON
/// syntax and shape errors stop at the first one).
pub fn parse_game(document: &[u8]) -> Result<Game, ParseErrors> {
    let mut de = serde_json::Deserializer::from_slice(document);
    let raw: RawGame = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { String::new() } else { format!(".{path}") };
        ParseErrors::single(path, e.into_inner().to_string())
    })?;
    de.end().map_err(|e| ParseErrors::single("", e.to_string()))?;
    Resolver::default().resolve(raw)
}

#[derive(Default)]
struct Resolver {
    errors: Vec<DocumentError>,
}

impl Resolver {
    fn err(&mut self, path: String, message: impl Into<String>) {
        self.errors.push(DocumentError {
            path,
            message: message.into(),
        });
    }

    fn rational(&mut self, path: String, text: &RationalText) -> Option<BigRational> {
        match parse_rational(&text.0) {
            Ok(r) => Some(r),
            Err(e) => {
                self.err(path, e.to_string());
                None
            }
        }
    }

    fn resolve(mut self, raw: RawGame) -> Result<Game, ParseErrors> {
        let mut players: BTreeMap<&str, PlayerId> = BTreeMap::new();
        for (i, p) in raw.players.iter().enumerate() {
            if players.insert(p, PlayerId(i)).is_some() {
                self.err(format!(".players[{i}]"), format!("duplicate player {p}"));
            }
        }
        if raw.players.is_empty() {
            self.err(".players".into(), "no players");
        }
        if raw.vertices.is_empty() {
            self.err(".vertices".into(), "no vertices");
        }
        let mut vertices: BTreeMap<&str, VertexId> = BTreeMap::new();
        let mut owned = Vec::new();
        for (i, v) in raw.vertices.iter().enumerate() {
            if vertices.insert(&v.id, VertexId(i)).is_some() {
                self.err(format!(".vertices[{i}].id"), format!("duplicate vertex {}", v.id));
            }
            match players.get(v.owner.as_str()) {
                Some(&p) => owned.push((v.id.clone(), p)),
                None => {
                    self.err(format!(".vertices[{i}].owner"), format!("unknown player {}", v.owner));
                    owned.push((v.id.clone(), PlayerId(0)));
                }
            }
        }

        let mut edges = Vec::new();
        let mut seen = BTreeSet::new();
        for (k, e) in raw.edges.iter().enumerate() {
            let from = self.vertex(&vertices, format!(".edges[{k}].from"), &e.from);
            let to = self.vertex(&vertices, format!(".edges[{k}].to"), &e.to);
            let price = self.rational(format!(".edges[{k}].price"), &e.price);
            let reward = match &e.reward {
                Some(r) => self.rational(format!(".edges[{k}].reward"), r),
                None => Some(BigRational::one()),
            };
            if let (Some(from), Some(to)) = (from, to) {
                if !seen.insert((from, to)) {
                    self.err(format!(".edges[{k}]"), format!("duplicate edge {} -> {}", e.from, e.to));
                    continue;
                }
                if let (Some(price), Some(reward)) = (price, reward) {
                    edges.push(Edge {
                        from,
                        to,
                        price,
                        reward,
                    });
                }
            }
        }
        let initial = self.vertex(&vertices, ".initial".into(), &raw.initial);

        let mut objectives = Objectives::new();
        for (name, o) in &raw.objectives {
            let path = format!(".objectives.{name}");
            let player = players.get(name.as_str()).copied();
            if player.is_none() {
                self.err(path.clone(), format!("unknown player {name}"));
            }
            let spec = self.objective(&vertices, &path, o);
            if let (Some(p), Some(spec)) = (player, spec) {
                objectives.insert(p, spec);
            }
        }

        if !self.errors.is_empty() {
            return Err(ParseErrors(self.errors));
        }
        let graph = GameGraph::new(raw.players, owned, edges).map_err(|e| ParseErrors::single("", e.to_string()))?;
        Ok(Game {
            graph,
            objectives,
            initial: initial.expect("checked above"),
        })
    }

    fn vertex(&mut self, vertices: &BTreeMap<&str, VertexId>, path: String, name: &str) -> Option<VertexId> {
        let v = vertices.get(name).copied();
        if v.is_none() {
            self.err(path, format!("unknown vertex {name}"));
        }
        v
    }

    fn objective(&mut self, vertices: &BTreeMap<&str, VertexId>, path: &str, o: &RawObjective) -> Option<CostSpec> {
        let unexpected = |field: &str, present: bool| present.then(|| format!("{path}.{field}"));
        let mut extra = Vec::new();
        let spec = match o.kind.as_str() {
            "reachability_price" => {
                extra.extend(unexpected("lambda", o.lambda.is_some()));
                extra.extend(unexpected("threshold", o.threshold.is_some()));
                let Some(goal) = &o.goal else {
                    self.err(format!("{path}.goal"), "missing goal");
                    return None;
                };
                if goal.is_empty() {
                    self.err(format!("{path}.goal"), "empty goal");
                }
                let vs: Vec<Option<VertexId>> = goal
                    .iter()
                    .enumerate()
                    .map(|(i, v)| self.vertex(vertices, format!("{path}.goal[{i}]"), v))
                    .collect();
                vs.into_iter()
                    .collect::<Option<BTreeSet<_>>>()
                    .map(|goal| CostSpec::ReachabilityPrice { goal })
            }
            "discounted" => {
                extra.extend(unexpected("goal", o.goal.is_some()));
                extra.extend(unexpected("threshold", o.threshold.is_some()));
                let Some(text) = &o.lambda else {
                    self.err(format!("{path}.lambda"), "missing lambda");
                    return None;
                };
                let lambda = self.rational(format!("{path}.lambda"), text)?;
                if !lambda.is_positive() || lambda >= BigRational::one() {
                    self.err(format!("{path}.lambda"), "lambda out of range (0,1)");
                    return None;
                }
                Some(CostSpec::DiscountedPrice { lambda })
            }
            "mean_payoff" | "ratio" => {
                extra.extend(unexpected("goal", o.goal.is_some()));
                extra.extend(unexpected("lambda", o.lambda.is_some()));
                extra.extend(unexpected("threshold", o.threshold.is_some()));
                Some(if o.kind == "ratio" {
                    CostSpec::RatioAverage
                } else {
                    CostSpec::MeanPayoff
                })
            }
            "energy_sup" => {
                extra.extend(unexpected("goal", o.goal.is_some()));
                extra.extend(unexpected("lambda", o.lambda.is_some()));
                let Some(text) = &o.threshold else {
                    self.err(format!("{path}.threshold"), "missing threshold");
                    return None;
                };
                let threshold = self.rational(format!("{path}.threshold"), text)?;
                Some(CostSpec::EnergySup { threshold })
            }
            other => {
                self.err(format!("{path}.type"), format!("unknown objective type {other:?}"));
                return None;
            }
        };
        for p in extra {
            self.err(p, format!("not used by {} objectives", o.kind));
        }
        spec
    }
}

/// Canonical JSON form: sorted keys, input order for lists, rationals as
/// strings, rewards only when they differ from 1.
pub fn game_to_json(game: &Game) -> Value {
    let g = &game.graph;
    let players: Vec<Value> = g.players().map(|p| json!(g.player_name(p))).collect();
    let vertices: Vec<Value> = g
        .vertices()
        .map(|v| json!({"id": g.vertex_name(v), "owner": g.player_name(g.owner(v))}))
        .collect();
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| {
            let mut m = Map::new();
            m.insert("from".into(), json!(g.vertex_name(e.from)));
            m.insert("to".into(), json!(g.vertex_name(e.to)));
            m.insert("price".into(), json!(format_rational(&e.price)));
            if !e.reward.is_one() {
                m.insert("reward".into(), json!(format_rational(&e.reward)));
            }
            Value::Object(m)
        })
        .collect();
    let mut objectives = Map::new();
    for (&p, spec) in &game.objectives {
        let mut o = Map::new();
        o.insert("type".into(), json!(spec.type_name()));
        match spec {
            CostSpec::ReachabilityPrice { goal } => {
                let names: Vec<&str> = goal.iter().map(|&v| g.vertex_name(v)).collect();
                o.insert("goal".into(), json!(names));
            }
            CostSpec::DiscountedPrice { lambda } => {
                o.insert("lambda".into(), json!(format_rational(lambda)));
            }
            CostSpec::EnergySup { threshold } => {
                o.insert("threshold".into(), json!(format_rational(threshold)));
            }
            CostSpec::MeanPayoff | CostSpec::RatioAverage => {}
        }
        objectives.insert(g.player_name(p).to_string(), Value::Object(o));
    }
    json!({
        "players": players,
        "vertices": vertices,
        "edges": edges,
        "initial": g.vertex_name(game.initial),
        "objectives": objectives,
    })
}

/// Pretty-printed canonical document with a trailing newline.
pub fn serialize_game(game: &Game) -> String {
    let mut s = serde_json::to_string_pretty(&game_to_json(game)).expect("JSON values serialize");
    s.push('\n');
    s
}
