//! Exact values, player strategies and verification tooling for the
//! Toucher-Isolator game on cycles and paths, played in its dual vertex
//! form: Maker scores one point for every pair of adjacent cells she owns.

pub mod board;
pub mod cache;
pub mod error;
pub mod explicit;
pub mod harness;
pub mod oracle;
pub mod solver;
pub mod strategies;

pub use board::{
    formula_values, game_from_cycle, game_from_path, split_breaker, split_maker, structure_counts, Component,
    ComponentKind, FormulaValues, GameSpec, Move, Origin, Player, Position, StructureCounts,
};
pub use error::{BoardError, CacheError, SolveError};
pub use explicit::{Cell, ExplicitBoard, Topology};
pub use oracle::{brute_force_explicit, BruteForce};
pub use solver::{Budget, SolveResult, Solver};
pub use strategies::{
    best_response_value, breaker_first_response, AnyStrategy, Arena, Lemma3Maker, Lemma4Maker, Lemma5Breaker,
    MakerBlockState, Strategy,
};
