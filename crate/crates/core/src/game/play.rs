use super::{GameError, GameGraph, PositionalStrategy, VertexId};

/// Finite path `h_0 … h_k` through the game graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct History {
    vertices: Vec<VertexId>,
}

impl History {
    pub fn new(g: &GameGraph, vertices: Vec<VertexId>) -> Result<Self, GameError> {
        if vertices.is_empty() {
            return Err(GameError::EmptyHistory);
        }
        check_path(g, &vertices)?;
        Ok(History { vertices })
    }

    pub fn from_names(g: &GameGraph, names: &[&str]) -> Result<Self, GameError> {
        History::new(g, resolve_names(g, names.iter().copied())?)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().expect("histories are nonempty")
    }

    /// Number of edges (`k` for `h_0 … h_k`).
    pub fn num_edges(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The play `h·ρ`, where `ρ` starts at the last vertex of the history.
    pub fn then(&self, rho: &LassoPlay) -> Result<LassoPlay, GameError> {
        if rho.first() != self.last() {
            return Err(GameError::NotAPath(format!(
                "lasso starts at {} but history ends at {}",
                rho.first(),
                self.last()
            )));
        }
        let mut prefix = self.vertices[..self.vertices.len() - 1].to_vec();
        prefix.extend_from_slice(rho.prefix());
        Ok(LassoPlay::canonical_from(prefix, rho.cycle().to_vec()))
    }
}

/// Ultimately periodic play `prefix · cycle^ω`, always held in canonical
/// form: the cycle is primitive and the prefix is as short as possible, so
/// two lassos denote the same play exactly when they are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LassoPlay {
    prefix: Vec<VertexId>,
    cycle: Vec<VertexId>,
}

impl LassoPlay {
    pub fn new(g: &GameGraph, prefix: Vec<VertexId>, cycle: Vec<VertexId>) -> Result<Self, GameError> {
        if cycle.is_empty() {
            return Err(GameError::EmptyCycle);
        }
        let mut path = prefix.clone();
        path.extend_from_slice(&cycle);
        path.push(cycle[0]);
        check_path(g, &path)?;
        Ok(Self::canonical_from(prefix, cycle))
    }

    pub fn from_names(g: &GameGraph, prefix: &[&str], cycle: &[&str]) -> Result<Self, GameError> {
        let prefix = resolve_names(g, prefix.iter().copied())?;
        let cycle = resolve_names(g, cycle.iter().copied())?;
        LassoPlay::new(g, prefix, cycle)
    }

    /// Parses `"v0,v1;c0,c1"` (prefix before `;`, optional parentheses
    /// around the cycle). Without `;` the whole list is the cycle.
    pub fn parse(g: &GameGraph, text: &str) -> Result<Self, GameError> {
        let (prefix, cycle) = match text.split_once(';') {
            Some((p, c)) => (p, c),
            None => ("", text),
        };
        let cycle = cycle.trim().trim_start_matches('(').trim_end_matches(')');
        let split = |s: &str| -> Vec<String> {
            s.split(',')
                .map(|x| x.trim().to_string())
                .filter(|x| !x.is_empty())
                .collect()
        };
        let prefix = resolve_names(g, split(prefix).iter().map(String::as_str))?;
        let cycle = resolve_names(g, split(cycle).iter().map(String::as_str))?;
        LassoPlay::new(g, prefix, cycle)
    }

    /// Outcome of a total positional profile from `start`.
    pub fn from_positional(g: &GameGraph, profile: &PositionalStrategy, start: VertexId) -> Result<Self, GameError> {
        let mut seen = std::collections::HashMap::new();
        let mut path = Vec::new();
        let mut v = start;
        while !seen.contains_key(&v) {
            seen.insert(v, path.len());
            path.push(v);
            v = profile
                .get(v)
                .ok_or_else(|| GameError::MissingChoice(g.vertex_name(v).to_string()))?;
        }
        let cycle = path.split_off(seen[&v]);
        LassoPlay::new(g, path, cycle)
    }

    /// Canonicalizes without checking edges; callers guarantee validity.
    pub(crate) fn canonical_from(mut prefix: Vec<VertexId>, mut cycle: Vec<VertexId>) -> Self {
        assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
        let len = cycle.len();
        if let Some(period) =
            (1..len).find(|&d| len.is_multiple_of(d) && (0..len).all(|i| cycle[i] == cycle[(i + d) % len]))
        {
            cycle.truncate(period);
        }
        while let Some(&last) = prefix.last() {
            if last != *cycle.last().unwrap() {
                break;
            }
            prefix.pop();
            cycle.rotate_right(1);
        }
        LassoPlay { prefix, cycle }
    }

    pub fn prefix(&self) -> &[VertexId] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[VertexId] {
        &self.cycle
    }

    pub fn first(&self) -> VertexId {
        self.prefix.first().copied().unwrap_or(self.cycle[0])
    }

    /// `prefix.len() + cycle.len()`, the number of distinct positions.
    pub fn span(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    pub fn vertex_at(&self, i: usize) -> VertexId {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// The first `n` vertices of the infinite play.
    pub fn unroll(&self, n: usize) -> Vec<VertexId> {
        (0..n).map(|i| self.vertex_at(i)).collect()
    }

    /// Vertices in play order over prefix then one cycle.
    pub fn positions(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.prefix.iter().chain(self.cycle.iter()).copied()
    }

    pub fn display(&self, g: &GameGraph) -> String {
        let cycle = format!("({})", g.name_list(&self.cycle));
        if self.prefix.is_empty() {
            cycle
        } else {
            format!("{};{}", g.name_list(&self.prefix), cycle)
        }
    }
}

fn check_path(g: &GameGraph, path: &[VertexId]) -> Result<(), GameError> {
    for &v in path {
        if v.0 >= g.num_vertices() {
            return Err(GameError::UnknownVertex(format!("#{}", v.0)));
        }
    }
    for w in path.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(GameError::NotAPath(format!(
                "no edge {} -> {}",
                g.vertex_name(w[0]),
                g.vertex_name(w[1])
            )));
        }
    }
    Ok(())
}

fn resolve_names<'a>(g: &GameGraph, names: impl Iterator<Item = &'a str>) -> Result<Vec<VertexId>, GameError> {
    names
        .map(|n| g.vertex(n).ok_or_else(|| GameError::UnknownVertex(n.to_string())))
        .collect()
}
