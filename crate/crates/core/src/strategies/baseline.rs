//! Reference opponents: random, greedy, optimal, and a deliberately bad
//! Breaker used to check that the harness notices broken strategies.

use std::hash::{Hash, Hasher};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHasher;

use crate::board::split_maker;
use crate::error::SolveError;
use crate::explicit::Cell;
use crate::solver::Solver;

use super::{first_empty, Arena, Strategy};

/// Uniform over legal cells. The draw depends only on the seed and the
/// board, so the strategy is a pure function of the game state.
#[derive(Clone, Copy, Debug)]
pub struct RandomStrategy {
    seed: u64,
}

impl RandomStrategy {
    pub fn new(seed: u64) -> Self {
        RandomStrategy { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl Strategy for RandomStrategy {
    type State = ();

    fn id(&self) -> String {
        format!("random({})", self.seed)
    }

    fn initial_state(&self, _: &Arena) {}

    fn choose(&self, arena: &Arena, _: Option<usize>, _: &()) -> Result<(usize, ()), SolveError> {
        let legal = arena.legal_cells();
        if legal.is_empty() {
            return Ok((first_empty(arena)?, ()));
        }
        let mut h = FxHasher::default();
        arena.board().cells().hash(&mut h);
        arena.current_player().hash(&mut h);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ h.finish());
        Ok((legal[rng.gen_range(0..legal.len())], ()))
    }
}

/// Maker taking the move that creates the most pairs right now; first in
/// canonical order on ties.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyMaker;

impl Strategy for GreedyMaker {
    type State = ();

    fn id(&self) -> String {
        "greedy-maker".into()
    }

    fn initial_state(&self, _: &Arena) {}

    fn choose(&self, arena: &Arena, _: Option<usize>, _: &()) -> Result<(usize, ()), SolveError> {
        let position = arena.position()?;
        let mut best = None;
        for m in position.legal_moves() {
            let c = position.components()[m.component_index];
            let (delta, _) = split_maker(c.kind(), c.len(), m.cell)?;
            if best.is_none_or(|(d, _)| delta > d) {
                best = Some((delta, m));
            }
        }
        let cell = match best {
            Some((_, m)) => arena.board().absolute_cell(&position, m)?,
            None => first_empty(arena)?,
        };
        Ok((cell, ()))
    }

    fn canonical(&self) -> bool {
        true
    }
}

/// Breaker claiming a free neighbour of Maker's last cell, lower one first.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyBreaker;

impl Strategy for GreedyBreaker {
    type State = ();

    fn id(&self) -> String {
        "greedy-breaker".into()
    }

    fn initial_state(&self, _: &Arena) {}

    fn choose(&self, arena: &Arena, last: Option<usize>, _: &()) -> Result<(usize, ()), SolveError> {
        let near = last
            .filter(|&c| arena.board().get(c) == Some(Cell::Maker))
            .and_then(|c| [c.checked_sub(1), Some(c + 1)].into_iter().flatten().find(|&i| arena.is_empty_cell(i)));
        Ok((near.map_or_else(|| first_empty(arena), Ok)?, ()))
    }
}

/// Plays the solver's principal move.
#[derive(Debug, Default)]
pub struct OptimalStrategy {
    solver: Mutex<Solver>,
}

impl OptimalStrategy {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_solver(solver: Solver) -> Self {
        OptimalStrategy { solver: Mutex::new(solver) }
    }
}

impl Strategy for OptimalStrategy {
    type State = ();

    fn id(&self) -> String {
        "optimal".into()
    }

    fn initial_state(&self, _: &Arena) {}

    fn choose(&self, arena: &Arena, _: Option<usize>, _: &()) -> Result<(usize, ()), SolveError> {
        let position = arena.position()?;
        let mut solver = self.solver.lock().unwrap_or_else(|e| e.into_inner());
        let pending = arena.pending_free_breaker_moves();
        let result = if pending > 0 {
            solver.solve_free_breaker_moves(position.components(), pending)?
        } else {
            solver.solve(&position)?
        };
        let cell = match result.principal_move {
            Some(m) => arena.board().absolute_cell(&position, m)?,
            None => first_empty(arena)?,
        };
        Ok((cell, ()))
    }

    fn canonical(&self) -> bool {
        true
    }
}

/// Always claims the highest free cell. Not a sound strategy for anything.
#[derive(Clone, Copy, Debug, Default)]
pub struct CorruptedBreaker;

impl Strategy for CorruptedBreaker {
    type State = ();

    fn id(&self) -> String {
        "corrupt-breaker".into()
    }

    fn initial_state(&self, _: &Arena) {}

    fn choose(&self, arena: &Arena, _: Option<usize>, _: &()) -> Result<(usize, ()), SolveError> {
        let cell = arena.board().empty_cells().last().map_or_else(|| first_empty(arena), Ok)?;
        Ok((cell, ()))
    }
}
