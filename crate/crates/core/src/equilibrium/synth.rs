use std::collections::BTreeMap;

use super::automaton::{assemble, build_strategy_automaton, Step};
use super::simulate::simulate;
use super::{check_owner, objective, EquilibriumError, NashProfile, PlayerStrategies};
use crate::cost::eval_lasso;
use crate::ext::ExtRational;
use crate::game::{
    validate_game, GameGraph, LassoPlay, Objectives, PlayerId, PositionalStrategy, StrategyAutomaton, VertexId,
};
use crate::solvers::{solve, MinMaxInstance, SolveResult};

/// Replacement optimal strategies, by player.
pub type Overrides = BTreeMap<PlayerId, PositionalStrategy>;

/// Punishment equilibrium built from positional optimal strategies.
///
/// Each player's game against the coalition of the others is solved; the
/// players' own optimal strategies fix the agreed play and the coalition
/// strategies serve as punishments. An override replaces part of a
/// player's strategy and is accepted only if it keeps every value.
pub fn synthesize_ne(
    g: &GameGraph,
    specs: &Objectives,
    v0: VertexId,
    overrides: &Overrides,
) -> Result<NashProfile, EquilibriumError> {
    check_game(g, specs)?;
    let mut solved: BTreeMap<PlayerId, SolveResult> = BTreeMap::new();
    for p in g.players() {
        let inst = MinMaxInstance::for_player(g, p, objective(g, specs, p)?.clone())?;
        let mut res = solve(&inst)?;
        if let Some(ov) = overrides.get(&p) {
            res.sigma_min = apply_override(g, &inst, &res, p, ov)?;
        }
        solved.insert(p, res);
    }

    let profile = g.players().fold(PositionalStrategy::default(), |acc, p| {
        acc.merged(&solved[&p].sigma_min)
    });
    let outcome = LassoPlay::from_positional(g, &profile, v0)?;

    let mut automata = BTreeMap::new();
    let mut provenance = BTreeMap::new();
    for i in g.players() {
        let sigma = &solved[&i].sigma_min;
        let punish: BTreeMap<PlayerId, PositionalStrategy> = g
            .players()
            .filter(|&j| j != i)
            .map(|j| (j, solved[&j].sigma_max.restrict_to(g, i)))
            .collect();
        automata.insert(i, build_strategy_automaton(g, i, &outcome, sigma, &punish)?);
        let mut punishers = BTreeMap::new();
        for (&j, s) in &punish {
            punishers.insert(j, StrategyAutomaton::positional(g, i, s)?);
        }
        provenance.insert(
            i,
            PlayerStrategies {
                optimal: StrategyAutomaton::positional(g, i, sigma)?,
                punish: punishers,
            },
        );
    }
    let values = solved.iter().map(|(&p, r)| (p, r.value(v0).clone())).collect();
    finish(g, specs, automata, outcome, values, provenance)
}

/// Punishment equilibrium built from finite-memory strategies.
///
/// The supplied own strategies are run together on the product of the
/// arena with their memories; the positions of that run play the role of
/// the vertices of the agreed play. Values are still those of the
/// positional solvers, since optimal values do not depend on memory.
pub fn synthesize_ne_general(
    g: &GameGraph,
    specs: &Objectives,
    v0: VertexId,
    supplied: &BTreeMap<PlayerId, PlayerStrategies>,
) -> Result<NashProfile, EquilibriumError> {
    check_game(g, specs)?;
    let mut values = BTreeMap::new();
    for p in g.players() {
        let inst = MinMaxInstance::for_player(g, p, objective(g, specs, p)?.clone())?;
        values.insert(p, solve(&inst)?.value(v0).clone());
        let s = supplied
            .get(&p)
            .ok_or_else(|| EquilibriumError::MissingAutomaton(g.player_name(p).to_string()))?;
        check_owner(g, &s.optimal, p)?;
        for a in s.punish.values() {
            check_owner(g, a, p)?;
        }
    }
    let own: Vec<&StrategyAutomaton> = g.players().map(|p| &supplied[&p].optimal).collect();
    let run = simulate(g, &own, v0)?;
    let outcome = run.play(g)?;
    let mut automata = BTreeMap::new();
    for i in g.players() {
        let steps: Vec<Step> = run
            .steps
            .iter()
            .map(|(v, mem)| Step {
                vertex: *v,
                own_memory: mem[i.0],
            })
            .collect();
        let s = &supplied[&i];
        automata.insert(i, assemble(g, i, &steps, run.loop_start, &s.optimal, &s.punish)?);
    }
    finish(g, specs, automata, outcome, values, supplied.clone())
}

fn check_game(g: &GameGraph, specs: &Objectives) -> Result<(), EquilibriumError> {
    let report = validate_game(g, specs);
    if !report.is_ok() {
        return Err(EquilibriumError::InvalidGame(report.to_string()));
    }
    for p in g.players() {
        objective(g, specs, p)?;
    }
    Ok(())
}

fn finish(
    g: &GameGraph,
    specs: &Objectives,
    automata: BTreeMap<PlayerId, StrategyAutomaton>,
    outcome: LassoPlay,
    values: BTreeMap<PlayerId, ExtRational>,
    provenance: BTreeMap<PlayerId, PlayerStrategies>,
) -> Result<NashProfile, EquilibriumError> {
    let mut costs = BTreeMap::new();
    for p in g.players() {
        costs.insert(p, eval_lasso(&specs[&p], &outcome, g)?);
    }
    Ok(NashProfile {
        automata,
        outcome,
        costs,
        values,
        provenance,
    })
}

/// Merges the override into the solver's strategy and checks, by solving
/// the game with those choices pinned, that it still guarantees the value
/// everywhere.
fn apply_override(
    g: &GameGraph,
    inst: &MinMaxInstance<'_>,
    res: &SolveResult,
    p: PlayerId,
    ov: &PositionalStrategy,
) -> Result<PositionalStrategy, EquilibriumError> {
    if let Some(v) = ov.domain().find(|&v| g.owner(v) != p) {
        return Err(EquilibriumError::OverrideOutsidePlayer {
            player: g.player_name(p).to_string(),
            vertex: g.vertex_name(v).to_string(),
        });
    }
    let sigma = res.sigma_min.merged(ov);
    let pinned = inst.pin(&sigma)?;
    let restricted = MinMaxInstance {
        graph: &pinned,
        ..inst.clone()
    };
    let achieved = solve(&restricted)?;
    for v in g.vertices() {
        if achieved.value(v) != res.value(v) {
            return Err(EquilibriumError::OverrideNotOptimal {
                player: g.player_name(p).to_string(),
                vertex: g.vertex_name(v).to_string(),
                value: res.value(v).clone(),
                achieved: achieved.value(v).clone(),
            });
        }
    }
    Ok(sigma)
}
