//! Quantitative games on graphs: exact Min-Max solvers and punishment-based
//! Nash equilibria for multiplayer cost games.

pub mod cli;
pub mod cost;
pub mod equilibrium;
pub mod ext;
pub mod fixtures;
pub mod game;
pub mod gen;
pub mod io;
pub mod solvers;
