use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write;

use crate::ext::format_rational;
use crate::game::{GameGraph, LassoPlay, StrategyAutomaton, VertexId};

/// What to emphasize when drawing a game.
#[derive(Clone, Debug, Default)]
pub struct Highlight {
    /// filled vertices, typically a reachability goal
    pub shaded: BTreeSet<VertexId>,
    /// edges of this play are drawn bold
    pub play: Option<LassoPlay>,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering of the arena. With two players the first player's
/// vertices are circles and the second's boxes; otherwise all are boxes.
pub fn export_dot(g: &GameGraph, highlight: &Highlight) -> String {
    let mut out = String::from("digraph game {\n  rankdir=LR;\n");
    for v in g.vertices() {
        let shape = if g.num_players() == 2 && g.owner(v).0 == 0 {
            "circle"
        } else {
            "box"
        };
        let fill = if highlight.shaded.contains(&v) {
            ", style=filled, fillcolor=lightgray"
        } else {
            ""
        };
        let _ = writeln!(out, "  {} [shape={shape}{fill}];", quote(g.vertex_name(v)));
    }
    let on_play: HashSet<(VertexId, VertexId)> = highlight
        .play
        .as_ref()
        .map(|p| {
            let vs: Vec<VertexId> = p.unroll(p.span() + 1);
            vs.windows(2).map(|w| (w[0], w[1])).collect()
        })
        .unwrap_or_default();
    let rewards = g.has_custom_rewards();
    for e in g.edges() {
        let mut label = format_rational(&e.price);
        if rewards {
            label = format!("{label}/{}", format_rational(&e.reward));
        }
        let bold = if on_play.contains(&(e.from, e.to)) {
            ", penwidth=2"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}{bold}];",
            quote(g.vertex_name(e.from)),
            quote(g.vertex_name(e.to)),
            quote(&label)
        );
    }
    out.push_str("}\n");
    out
}

/// A transition of a strategy automaton as drawn: reading `read` in state
/// `from` moves to `to`, advising `advice` when the vertex is the player's.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: usize,
    pub read: VertexId,
    pub advice: Option<VertexId>,
    pub to: usize,
}

impl Transition {
    /// `"v/v'"`, or `"v/−"` without advice.
    pub fn label(&self, g: &GameGraph) -> String {
        let advice = self.advice.map_or("\u{2212}", |t| g.vertex_name(t));
        format!("{}/{advice}", g.vertex_name(self.read))
    }
}

/// Transitions that can fire when the automaton's player follows it from
/// `start`, in discovery order. Self-loops are left out unless they read a
/// vertex where the player has a real choice, since otherwise they carry no
/// information.
pub fn automaton_transitions(g: &GameGraph, a: &StrategyAutomaton, start: VertexId) -> Vec<Transition> {
    let mut seen = HashSet::from([(a.initial, start)]);
    let mut queue = VecDeque::from([(a.initial, start)]);
    let mut out = Vec::new();
    while let Some((m, v)) = queue.pop_front() {
        let to = a.step(m, v);
        let advice = a.advise(m, v);
        let mine = g.owner(v) == a.player;
        if to != m || (mine && g.out_edges(v).len() >= 2) {
            out.push(Transition {
                from: m,
                read: v,
                advice,
                to,
            });
        }
        let next: Vec<VertexId> = match advice {
            Some(w) if mine => vec![w],
            _ => g.successors(v).collect(),
        };
        for w in next {
            if seen.insert((to, w)) {
                queue.push_back((to, w));
            }
        }
    }
    out
}

/// Graphviz rendering of a strategy automaton, transitions labeled `v/v'`.
pub fn export_automaton_dot(g: &GameGraph, a: &StrategyAutomaton, start: VertexId) -> String {
    let mut out = format!(
        "digraph {} {{\n  rankdir=LR;\n",
        quote(&format!("automaton {}", g.player_name(a.player)))
    );
    out.push_str("  __start [shape=point];\n");
    for label in &a.labels {
        let _ = writeln!(out, "  {} [shape=circle];", quote(label));
    }
    let _ = writeln!(out, "  __start -> {};", quote(&a.labels[a.initial]));
    for t in automaton_transitions(g, a, start) {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&a.labels[t.from]),
            quote(&a.labels[t.to]),
            quote(&t.label(g))
        );
    }
    out.push_str("}\n");
    out
}
