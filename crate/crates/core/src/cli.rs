//! Command-line front end. Results go to standard output, diagnostics to
//! standard error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::cost::eval_lasso;
use crate::equilibrium::{synthesize_ne, verify_ne, EquilibriumError, NashProfile, Overrides};
use crate::ext::ExtRational;
use crate::game::{CostSpec, Game, GameGraph, LassoPlay, PlayerId, VertexId};
use crate::io::{
    automaton_transitions, export_automaton_dot, export_dot, nash_profile_to_json, parse_game, parse_profile, Highlight,
};
use crate::solvers::{brute_force_value, solve, MinMaxInstance, SolveError, DEFAULT_PROFILE_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PROFITABLE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "quantgame",
    version,
    about = "Solve quantitative graph games and synthesize Nash equilibria"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a game document for structural problems
    Validate { game: PathBuf },
    /// Cost of a lasso play for one player
    Eval {
        game: PathBuf,
        #[arg(long)]
        player: String,
        /// prefix;cycle, e.g. "A;B,C"
        #[arg(long)]
        lasso: String,
    },
    /// Values and optimal positional strategies of a player's game against the others
    Solve {
        game: PathBuf,
        #[arg(long)]
        player: String,
    },
    /// Build a punishment Nash equilibrium
    Synthesize {
        game: PathBuf,
        /// replace optimal choices, e.g. p1=A:D,C:B
        #[arg(long = "override", value_name = "PLAYER=V:W,...")]
        overrides: Vec<String>,
        /// write game.dot and one automaton_<player>.dot per player here
        #[arg(long, value_name = "DIR")]
        emit_dot: Option<PathBuf>,
        /// write the profile as JSON
        #[arg(long, value_name = "FILE")]
        emit_json: Option<PathBuf>,
    },
    /// Look for profitable deviations from a profile of strategy automata
    Verify {
        game: PathBuf,
        #[arg(long)]
        profile: PathBuf,
    },
    /// Values by enumerating every positional profile
    Oracle {
        game: PathBuf,
        #[arg(long)]
        player: String,
        #[arg(long, default_value_t = DEFAULT_PROFILE_CAP)]
        cap: u128,
    },
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }

    fn internal(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: message.to_string(),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Cost(_) => Failure::internal(e),
            _ => Failure::input(e),
        }
    }
}

impl From<EquilibriumError> for Failure {
    fn from(e: EquilibriumError) -> Self {
        match e {
            EquilibriumError::Cost(_)
            | EquilibriumError::RepeatedVertex(_)
            | EquilibriumError::InconsistentPlay { .. } => Failure::internal(e),
            EquilibriumError::Solve(inner) => inner.into(),
            _ => Failure::input(e),
        }
    }
}

/// Runs the command line with the process's standard streams.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Validate { game } => {
            let game = load(&game)?;
            let report = game.validate();
            if !report.is_ok() {
                return Err(Failure::input(report.to_string().trim_end()));
            }
            emit(out, "valid")?;
            Ok(EXIT_OK)
        }
        Command::Eval { game, player, lasso } => {
            let game = load(&game)?;
            let p = player_id(&game.graph, &player)?;
            let play = LassoPlay::parse(&game.graph, &lasso).map_err(Failure::input)?;
            let spec = spec_of(&game, p)?;
            let cost = eval_lasso(spec, &play, &game.graph).map_err(Failure::input)?;
            emit(out, &cost.to_string())?;
            Ok(EXIT_OK)
        }
        Command::Solve { game, player } => {
            let game = load_valid(&game)?;
            let g = &game.graph;
            let p = player_id(g, &player)?;
            let inst = MinMaxInstance::for_player(g, p, spec_of(&game, p)?.clone())?;
            let res = solve(&inst)?;
            let mut text = String::from("values:\n");
            for v in g.vertices() {
                text += &format!("  {} = {}\n", g.vertex_name(v), res.value(v));
            }
            text += &format!("sigma_min: {}\n", res.sigma_min.display(g));
            text += &format!("sigma_max: {}", res.sigma_max.display(g));
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Synthesize {
            game,
            overrides,
            emit_dot,
            emit_json,
        } => {
            let game = load_valid(&game)?;
            let g = &game.graph;
            let overrides = parse_overrides(g, &overrides)?;
            let profile = synthesize_ne(g, &game.objectives, game.initial, &overrides)?;
            // The construction guarantees an equilibrium; check it anyway.
            let report = verify_ne(g, &game.objectives, &profile.automata, game.initial)?;
            if report.outcome != profile.outcome || !report.is_equilibrium() {
                return Err(Failure::internal("synthesized profile is not an equilibrium"));
            }
            emit(out, &describe_profile(g, &profile, game.initial))?;
            if let Some(dir) = emit_dot {
                write_dots(&dir, &game, &profile)?;
            }
            if let Some(file) = emit_json {
                let mut text =
                    serde_json::to_string_pretty(&nash_profile_to_json(g, &profile)).map_err(Failure::internal)?;
                text.push('\n');
                write_file(&file, &text)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { game, profile } => {
            let game = load_valid(&game)?;
            let g = &game.graph;
            let bytes = read(&profile)?;
            let automata =
                parse_profile(g, &bytes).map_err(|e| Failure::input(format!("{}: {e}", profile.display())))?;
            let report = verify_ne(g, &game.objectives, &automata, game.initial)?;
            let mut text = format!("outcome: {}\n", report.outcome.display(g));
            for (&p, c) in &report.players {
                text += &format!(
                    "{}: cost {}, best response {}",
                    g.player_name(p),
                    c.outcome_cost,
                    c.best_response
                );
                if let Some(w) = &c.witness {
                    text += &format!(", profitable deviation {}", w.display(g));
                }
                text.push('\n');
            }
            text += if report.is_equilibrium() {
                "equilibrium: yes"
            } else {
                "equilibrium: no"
            };
            emit(out, &text)?;
            Ok(if report.is_equilibrium() {
                EXIT_OK
            } else {
                EXIT_PROFITABLE
            })
        }
        Command::Oracle { game, player, cap } => {
            let game = load_valid(&game)?;
            let g = &game.graph;
            let p = player_id(g, &player)?;
            let inst = MinMaxInstance::for_player(g, p, spec_of(&game, p)?.clone())?;
            let brute = brute_force_value(&inst, cap)?;
            let mut text = String::from("values (min-max / max-min):\n");
            for v in g.vertices() {
                text += &format!("  {} = {} / {}\n", g.vertex_name(v), brute.upper[v.0], brute.lower[v.0]);
            }
            text += if brute.determined() {
                "determined: yes"
            } else {
                "determined: no"
            };
            emit(out, text.as_str())?;
            Ok(EXIT_OK)
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(Failure::internal)
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Game, Failure> {
    parse_game(&read(path)?).map_err(|e| Failure::input(format!("{}:\n{e}", path.display())))
}

fn load_valid(path: &Path) -> Result<Game, Failure> {
    let game = load(path)?;
    let report = game.validate();
    if !report.is_ok() {
        return Err(Failure::input(format!(
            "{}:\n{}",
            path.display(),
            report.to_string().trim_end()
        )));
    }
    Ok(game)
}

fn player_id(g: &GameGraph, name: &str) -> Result<PlayerId, Failure> {
    g.player(name)
        .ok_or_else(|| Failure::input(format!("unknown player {name}")))
}

fn spec_of(game: &Game, p: PlayerId) -> Result<&CostSpec, Failure> {
    game.objectives
        .get(&p)
        .ok_or_else(|| Failure::input(format!("no objective for player {}", game.graph.player_name(p))))
}

/// `p1=A:D,C:B` gives player `p1` the choices `A→D` and `C→B`.
fn parse_overrides(g: &GameGraph, args: &[String]) -> Result<Overrides, Failure> {
    let mut overrides: Overrides = BTreeMap::new();
    for arg in args {
        let (player, choices) = arg
            .split_once('=')
            .ok_or_else(|| Failure::input(format!("override {arg:?} is not of the form PLAYER=V:W,...")))?;
        let p = player_id(g, player.trim())?;
        let mut sigma = overrides.remove(&p).unwrap_or_default();
        for choice in choices.split(',').map(str::trim).filter(|c| !c.is_empty()) {
            let (from, to) = choice
                .split_once(':')
                .ok_or_else(|| Failure::input(format!("override choice {choice:?} is not of the form V:W")))?;
            let vertex = |name: &str| {
                g.vertex(name.trim())
                    .ok_or_else(|| Failure::input(format!("unknown vertex {name}")))
            };
            let (from, to) = (vertex(from)?, vertex(to)?);
            if !g.has_edge(from, to) {
                return Err(Failure::input(format!("override choice {choice} is not an edge")));
            }
            sigma = sigma.with_choice(from, to);
        }
        overrides.insert(p, sigma);
    }
    Ok(overrides)
}

fn describe_profile(g: &GameGraph, profile: &NashProfile, start: VertexId) -> String {
    let by_player = |m: &BTreeMap<PlayerId, ExtRational>| -> String {
        m.iter()
            .map(|(&p, x)| format!("{}={x}", g.player_name(p)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut text = format!(
        "outcome: {}\ncosts: {}\nvalues: {}\n",
        profile.outcome.display(g),
        by_player(&profile.costs),
        by_player(&profile.values)
    );
    for (&p, a) in &profile.automata {
        if let Some(s) = profile.provenance.get(&p).and_then(|s| s.optimal.as_positional()) {
            text += &format!("optimal {}: {}\n", g.player_name(p), s.display(g));
        }
        text += &format!(
            "automaton {} ({} states, initial {}):\n",
            g.player_name(p),
            a.num_states(),
            a.labels[a.initial]
        );
        for t in automaton_transitions(g, a, start) {
            text += &format!("  {} --{}--> {}\n", a.labels[t.from], t.label(g), a.labels[t.to]);
        }
    }
    text.trim_end().to_string()
}

fn write_dots(dir: &Path, game: &Game, profile: &NashProfile) -> Result<(), Failure> {
    let g = &game.graph;
    std::fs::create_dir_all(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
    let shaded = game
        .objectives
        .values()
        .filter_map(|s| match s {
            CostSpec::ReachabilityPrice { goal } => Some(goal.iter().copied()),
            _ => None,
        })
        .flatten()
        .collect();
    let highlight = Highlight {
        shaded,
        play: Some(profile.outcome.clone()),
    };
    write_file(&dir.join("game.dot"), &export_dot(g, &highlight))?;
    for (&p, a) in &profile.automata {
        let file = dir.join(format!("automaton_{}.dot", g.player_name(p)));
        write_file(&file, &export_automaton_dot(g, a, game.initial))?;
    }
    Ok(())
}
