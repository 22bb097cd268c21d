//! Solitaire Clobber on grid boards.

pub mod board;
pub mod cli;
pub mod gadget;
pub mod linear;
pub mod plan;
pub mod rect;
pub mod solver;
pub mod suite;
pub mod text;

pub use board::{checkerboard, psi_line, BoardError, Color, Configuration, Coord, Move};
pub use plan::{replay, Plan, ReplayError, ReplayReport, Validation};
pub use solver::{Mode, Solver, SolverConfig, SolverError};
