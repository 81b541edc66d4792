use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use super::GameError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayerId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl PlayerId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
    pub price: BigRational,
    pub reward: BigRational,
}

/// Finite arena of a multiplayer cost game: players, owned vertices and
/// priced edges. Edges keep their input order, which drives every
/// tie-break in the solvers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameGraph {
    players: Vec<String>,
    vertex_names: Vec<String>,
    owners: Vec<PlayerId>,
    edges: Vec<Edge>,
    out: Vec<Vec<EdgeId>>,
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
    vertex_lookup: HashMap<String, VertexId>,
    player_lookup: HashMap<String, PlayerId>,
}

impl GameGraph {
    pub fn builder() -> GameGraphBuilder {
        GameGraphBuilder::default()
    }

    /// Builds a graph from already-resolved parts.
    ///
    /// Sink vertices are accepted here and reported by validation instead.
    pub fn new(players: Vec<String>, vertices: Vec<(String, PlayerId)>, edges: Vec<Edge>) -> Result<Self, GameError> {
        if players.is_empty() {
            return Err(GameError::NoPlayers);
        }
        if vertices.is_empty() {
            return Err(GameError::NoVertices);
        }
        let mut player_lookup = HashMap::new();
        for (i, p) in players.iter().enumerate() {
            if player_lookup.insert(p.clone(), PlayerId(i)).is_some() {
                return Err(GameError::DuplicatePlayer(p.clone()));
            }
        }
        let mut vertex_lookup = HashMap::new();
        let mut vertex_names = Vec::with_capacity(vertices.len());
        let mut owners = Vec::with_capacity(vertices.len());
        for (i, (name, owner)) in vertices.into_iter().enumerate() {
            if owner.0 >= players.len() {
                return Err(GameError::UnknownPlayer(format!("#{}", owner.0)));
            }
            if vertex_lookup.insert(name.clone(), VertexId(i)).is_some() {
                return Err(GameError::DuplicateVertex(name));
            }
            vertex_names.push(name);
            owners.push(owner);
        }
        let n = vertex_names.len();
        let mut out = vec![Vec::new(); n];
        let mut edge_index = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            if e.from.0 >= n || e.to.0 >= n {
                return Err(GameError::UnknownVertex(format!("#{}", e.from.0.max(e.to.0))));
            }
            if edge_index.insert((e.from, e.to), EdgeId(i)).is_some() {
                return Err(GameError::ParallelEdge {
                    from: vertex_names[e.from.0].clone(),
                    to: vertex_names[e.to.0].clone(),
                });
            }
            out[e.from.0].push(EdgeId(i));
        }
        Ok(GameGraph {
            players,
            vertex_names,
            owners,
            edges,
            out,
            edge_index,
            vertex_lookup,
            player_lookup,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> + '_ {
        (0..self.players.len()).map(PlayerId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn player_name(&self, p: PlayerId) -> &str {
        &self.players[p.0]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn player(&self, name: &str) -> Option<PlayerId> {
        self.player_lookup.get(name).copied()
    }

    pub fn owner(&self, v: VertexId) -> PlayerId {
        self.owners[v.0]
    }

    pub fn vertices_of(&self, p: PlayerId) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(move |&v| self.owner(v) == p)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v.0]
    }

    pub fn successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out[v.0].iter().map(move |&e| self.edges[e.0].to)
    }

    pub fn edge_between(&self, from: VertexId, to: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&(from, to)).copied()
    }

    pub fn has_edge(&self, from: VertexId, to: VertexId) -> bool {
        self.edge_index.contains_key(&(from, to))
    }

    /// True when some edge carries a reward other than 1.
    pub fn has_custom_rewards(&self) -> bool {
        self.edges.iter().any(|e| !e.reward.is_one())
    }

    pub fn name_list(&self, vs: &[VertexId]) -> String {
        vs.iter().map(|&v| self.vertex_name(v)).collect::<Vec<_>>().join(",")
    }
}

/// Name-based builder, convenient for hand-written games.
#[derive(Default, Debug, Clone)]
pub struct GameGraphBuilder {
    players: Vec<String>,
    vertices: Vec<(String, String)>,
    edges: Vec<(String, String, BigRational, BigRational)>,
}

impl GameGraphBuilder {
    pub fn player(mut self, name: &str) -> Self {
        self.players.push(name.to_string());
        self
    }

    pub fn vertex(mut self, name: &str, owner: &str) -> Self {
        self.vertices.push((name.to_string(), owner.to_string()));
        self
    }

    pub fn edge(self, from: &str, to: &str, price: i64) -> Self {
        self.edge_with(from, to, crate::ext::int(price), BigRational::one())
    }

    pub fn edge_with(mut self, from: &str, to: &str, price: BigRational, reward: BigRational) -> Self {
        self.edges.push((from.to_string(), to.to_string(), price, reward));
        self
    }

    pub fn build(self) -> Result<GameGraph, GameError> {
        let players = self.players;
        let player_of = |name: &str| {
            players
                .iter()
                .position(|p| p == name)
                .map(PlayerId)
                .ok_or_else(|| GameError::UnknownPlayer(name.to_string()))
        };
        let mut vertices = Vec::new();
        for (name, owner) in &self.vertices {
            vertices.push((name.clone(), player_of(owner)?));
        }
        let vertex_of = |name: &str| {
            vertices
                .iter()
                .position(|(v, _)| v == name)
                .map(VertexId)
                .ok_or_else(|| GameError::UnknownVertex(name.to_string()))
        };
        let mut edges = Vec::new();
        for (from, to, price, reward) in self.edges {
            edges.push(Edge {
                from: vertex_of(&from)?,
                to: vertex_of(&to)?,
                price,
                reward,
            });
        }
        GameGraph::new(players, vertices, edges)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p#{}", self.0)
    }
}
