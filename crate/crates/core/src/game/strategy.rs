use std::collections::BTreeMap;

use super::{GameError, GameGraph, PlayerId, VertexId};

/// Memoryless choice function over a set of vertices.
///
/// Carries no owner: the same type serves a single player's strategy and a
/// coalition strategy over the vertices of several players.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PositionalStrategy {
    choice: BTreeMap<VertexId, VertexId>,
}

impl PositionalStrategy {
    pub fn new(g: &GameGraph, choice: BTreeMap<VertexId, VertexId>) -> Result<Self, GameError> {
        for (&from, &to) in &choice {
            if from.0 >= g.num_vertices() || !g.has_edge(from, to) {
                return Err(not_an_edge(g, from, to));
            }
        }
        Ok(PositionalStrategy { choice })
    }

    pub(crate) fn from_map_unchecked(choice: BTreeMap<VertexId, VertexId>) -> Self {
        PositionalStrategy { choice }
    }

    pub fn get(&self, v: VertexId) -> Option<VertexId> {
        self.choice.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.choice.iter().map(|(&a, &b)| (a, b))
    }

    pub fn domain(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.choice.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.choice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choice.is_empty()
    }

    pub fn covers(&self, vertices: impl IntoIterator<Item = VertexId>) -> Result<(), VertexId> {
        for v in vertices {
            if !self.choice.contains_key(&v) {
                return Err(v);
            }
        }
        Ok(())
    }

    /// Keeps only the choices at vertices owned by `p`.
    pub fn restrict_to(&self, g: &GameGraph, p: PlayerId) -> Self {
        PositionalStrategy {
            choice: self
                .choice
                .iter()
                .filter(|(&v, _)| g.owner(v) == p)
                .map(|(&a, &b)| (a, b))
                .collect(),
        }
    }

    /// Union of two strategies; `other` wins on overlap.
    pub fn merged(&self, other: &Self) -> Self {
        let mut choice = self.choice.clone();
        choice.extend(other.choice.iter().map(|(&a, &b)| (a, b)));
        PositionalStrategy { choice }
    }

    pub fn with_choice(&self, from: VertexId, to: VertexId) -> Self {
        let mut choice = self.choice.clone();
        choice.insert(from, to);
        PositionalStrategy { choice }
    }

    pub fn display(&self, g: &GameGraph) -> String {
        self.iter()
            .map(|(a, b)| format!("{}->{}", g.vertex_name(a), g.vertex_name(b)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Mealy machine `(M, m0, δ, ν)` realizing a finite-memory strategy.
///
/// At vertex `v` in memory state `m` the player (if `v` is theirs) moves to
/// `ν(m, v)`, and the memory becomes `δ(m, v)`. States are indices into
/// `labels`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyAutomaton {
    pub player: PlayerId,
    pub labels: Vec<String>,
    pub initial: usize,
    /// `update[m][v]`
    pub update: Vec<Vec<usize>>,
    /// `advice[m][v]`, `Some` exactly on the player's vertices.
    pub advice: Vec<Vec<Option<VertexId>>>,
}

impl StrategyAutomaton {
    /// One-state automaton playing a positional strategy.
    pub fn positional(g: &GameGraph, player: PlayerId, sigma: &PositionalStrategy) -> Result<Self, GameError> {
        let mut advice = vec![None; g.num_vertices()];
        for v in g.vertices_of(player) {
            let to = sigma
                .get(v)
                .ok_or_else(|| GameError::MissingChoice(g.vertex_name(v).to_string()))?;
            advice[v.0] = Some(to);
        }
        let a = StrategyAutomaton {
            player,
            labels: vec!["m0".to_string()],
            initial: 0,
            update: vec![vec![0; g.num_vertices()]],
            advice: vec![advice],
        };
        a.check(g)?;
        Ok(a)
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    /// The strategy played, when there is a single memory state.
    pub fn as_positional(&self) -> Option<PositionalStrategy> {
        (self.num_states() == 1).then(|| PositionalStrategy {
            choice: self.advice[0]
                .iter()
                .enumerate()
                .filter_map(|(v, t)| t.map(|t| (VertexId(v), t)))
                .collect(),
        })
    }

    pub fn step(&self, m: usize, v: VertexId) -> usize {
        self.update[m][v.0]
    }

    pub fn advise(&self, m: usize, v: VertexId) -> Option<VertexId> {
        self.advice[m][v.0]
    }

    /// Memory after reading the whole history.
    pub fn run(&self, history: &[VertexId]) -> usize {
        history.iter().fold(self.initial, |m, &v| self.step(m, v))
    }

    /// Move prescribed after `history` (whose last vertex must be the
    /// player's).
    pub fn choose(&self, history: &[VertexId]) -> Option<VertexId> {
        let (&last, rest) = history.split_last()?;
        self.advise(self.run(rest), last)
    }

    /// Checks totality of δ and ν and that every advice is an edge.
    pub fn check(&self, g: &GameGraph) -> Result<(), GameError> {
        let n = g.num_vertices();
        let k = self.labels.len();
        let bad = |msg: String| Err(GameError::MalformedAutomaton(msg));
        if k == 0 {
            return bad("no states".into());
        }
        if self.initial >= k {
            return bad(format!("initial state {} out of range", self.initial));
        }
        if self.update.len() != k || self.advice.len() != k {
            return bad("update/advice tables do not match the state count".into());
        }
        for m in 0..k {
            if self.update[m].len() != n || self.advice[m].len() != n {
                return bad(format!("state {} tables do not cover every vertex", self.labels[m]));
            }
            for v in g.vertices() {
                if self.update[m][v.0] >= k {
                    return bad(format!("update from {} leaves the state set", self.labels[m]));
                }
                let mine = g.owner(v) == self.player;
                match self.advice[m][v.0] {
                    Some(to) if mine => {
                        if !g.has_edge(v, to) {
                            return Err(not_an_edge(g, v, to));
                        }
                    }
                    Some(_) => return bad(format!("advice at {} which the player does not own", g.vertex_name(v))),
                    None if mine => {
                        return bad(format!(
                            "no advice in state {} at vertex {}",
                            self.labels[m],
                            g.vertex_name(v)
                        ))
                    }
                    None => {}
                }
            }
        }
        Ok(())
    }
}

fn not_an_edge(g: &GameGraph, from: VertexId, to: VertexId) -> GameError {
    let name = |v: VertexId| {
        if v.0 < g.num_vertices() {
            g.vertex_name(v).to_string()
        } else {
            format!("#{}", v.0)
        }
    };
    GameError::NotAnEdge {
        from: name(from),
        to: name(to),
    }
}
