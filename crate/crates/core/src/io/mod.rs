//! Game and profile documents (JSON) and Graphviz export.

mod document;
mod dot;
mod profile;

pub use document::{game_to_json, parse_game, serialize_game, DocumentError, ParseErrors};
pub use dot::{automaton_transitions, export_automaton_dot, export_dot, Highlight, Transition};
pub use profile::{
    automaton_from_document, automaton_to_document, nash_profile_to_json, parse_profile, profile_to_json,
    AutomatonDocument,
};
