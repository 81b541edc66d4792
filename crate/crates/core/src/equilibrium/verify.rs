use std::collections::{BTreeMap, HashMap, VecDeque};

use super::simulate::simulate;
use super::{check_automata, objective, DeviationCheck, EquilibriumError, VerificationReport};
use crate::cost::eval_lasso;
use crate::game::{CostSpec, Edge, GameGraph, LassoPlay, Objectives, PlayerId, StrategyAutomaton, VertexId};
use crate::solvers::one_player_optimum;

/// Checks every player for a profitable deviation from the profile.
///
/// Fixing everybody else's automata turns the game into a one-player graph
/// for `j`: the product of the arena with the others' memories, where the
/// others' vertices keep only the advised edge. Any strategy of `j`, with
/// any amount of memory, yields a path in this graph and conversely, and
/// every solvable objective has a positional optimum in one-player graphs.
/// So the optimum over this graph is the best `j` can do against the
/// profile, and the profile is an equilibrium exactly when nobody's
/// optimum beats their outcome cost.
pub fn verify_ne(
    g: &GameGraph,
    specs: &Objectives,
    automata: &BTreeMap<PlayerId, StrategyAutomaton>,
    v0: VertexId,
) -> Result<VerificationReport, EquilibriumError> {
    check_automata(g, automata)?;
    let ordered: Vec<&StrategyAutomaton> = g.players().map(|p| &automata[&p]).collect();
    let outcome = simulate(g, &ordered, v0)?.play(g)?;
    let mut players = BTreeMap::new();
    for j in g.players() {
        let spec = objective(g, specs, j)?;
        let outcome_cost = eval_lasso(spec, &outcome, g)?;
        let product = Product::build(g, &ordered, j, v0);
        let (best_response, witness) = one_player_optimum(&product.graph, &product.lift(spec), true, VertexId(0))?;
        let profitable = best_response < outcome_cost;
        let witness = if profitable {
            Some(product.project(g, &witness)?)
        } else {
            None
        };
        players.insert(
            j,
            DeviationCheck {
                outcome_cost,
                best_response,
                profitable,
                witness,
            },
        );
    }
    Ok(VerificationReport { outcome, players })
}

/// The arena of `j` against the fixed automata of the other players,
/// restricted to what is reachable from the start.
struct Product {
    graph: GameGraph,
    /// game vertex of each product vertex
    vertex: Vec<VertexId>,
}

impl Product {
    fn build(g: &GameGraph, automata: &[&StrategyAutomaton], j: PlayerId, v0: VertexId) -> Self {
        let start: Vec<usize> = automata.iter().map(|a| a.initial).collect();
        let mut index: HashMap<(VertexId, Vec<usize>), usize> = HashMap::new();
        let mut nodes = vec![(v0, start.clone())];
        index.insert((v0, start), 0);
        let mut queue = VecDeque::from([0usize]);
        let mut edges = Vec::new();
        while let Some(x) = queue.pop_front() {
            let (v, mem) = nodes[x].clone();
            // j's own memory is irrelevant; it stays at its initial state
            let next_mem: Vec<usize> = mem
                .iter()
                .zip(automata)
                .enumerate()
                .map(|(p, (&m, a))| if p == j.0 { m } else { a.step(m, v) })
                .collect();
            let owner = g.owner(v);
            let targets: Vec<VertexId> = if owner == j {
                g.successors(v).collect()
            } else {
                vec![automata[owner.0]
                    .advise(mem[owner.0], v)
                    .expect("checked automata advise at their owner's vertices")]
            };
            for w in targets {
                let key = (w, next_mem.clone());
                let y = *index.entry(key.clone()).or_insert_with(|| {
                    nodes.push(key);
                    queue.push_back(nodes.len() - 1);
                    nodes.len() - 1
                });
                let e = g.edge(g.edge_between(v, w).expect("successor edge"));
                edges.push(Edge {
                    from: VertexId(x),
                    to: VertexId(y),
                    price: e.price.clone(),
                    reward: e.reward.clone(),
                });
            }
        }
        let name = g.player_name(j).to_string();
        let vertices = (0..nodes.len()).map(|x| (format!("s{x}"), PlayerId(0))).collect();
        let graph = GameGraph::new(vec![name], vertices, edges).expect("product graph is well formed");
        Product {
            graph,
            vertex: nodes.into_iter().map(|(v, _)| v).collect(),
        }
    }

    fn lift(&self, spec: &CostSpec) -> CostSpec {
        match spec {
            CostSpec::ReachabilityPrice { goal } => CostSpec::reachability(
                (0..self.vertex.len())
                    .filter(|&x| goal.contains(&self.vertex[x]))
                    .map(VertexId),
            ),
            other => other.clone(),
        }
    }

    fn project(&self, g: &GameGraph, play: &LassoPlay) -> Result<LassoPlay, EquilibriumError> {
        let down = |xs: &[VertexId]| xs.iter().map(|x| self.vertex[x.0]).collect();
        Ok(LassoPlay::new(g, down(play.prefix()), down(play.cycle()))?)
    }
}
