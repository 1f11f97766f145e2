//! Exact value of the best reply to a fixed strategy.
//!
//! The free player searches every legal cell; the fixed player's choices are
//! played out inline. The result is the score the fixed strategy guarantees
//! (if it is Breaker's, an upper bound it enforces; if Maker's, a lower one).

use std::time::Instant;

use rustc_hash::FxHashMap;

use crate::board::{GameSpec, Player};
use crate::error::SolveError;
use crate::solver::{encode_key, Budget, Key};

use super::{Arena, Strategy};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum NodeKey {
    Raw { maker: u128, breaker: u128, to_move: Player, pending: u32 },
    Canonical { key: Key, pending: u32 },
}

pub struct BestResponse<'a, S: Strategy> {
    strategy: &'a S,
    fixed: Player,
    budget: Budget,
    memo: FxHashMap<(NodeKey, S::State), u16>,
    nodes: u64,
    started: Instant,
}

impl<'a, S: Strategy> BestResponse<'a, S> {
    pub fn new(strategy: &'a S, fixed: Player, budget: Budget) -> Self {
        BestResponse { strategy, fixed, budget, memo: FxHashMap::default(), nodes: 0, started: Instant::now() }
    }

    pub fn nodes_expanded(&self) -> u64 {
        self.nodes
    }

    /// Total score of `spec` when the free player answers the fixed
    /// strategy optimally.
    pub fn value(&mut self, spec: &GameSpec) -> Result<u32, SolveError> {
        self.started = Instant::now();
        let mut arena = Arena::from_spec(spec)?;
        let state = self.strategy.initial_state(&arena);
        let (gained, state) = self.advance_fixed(&mut arena, state, None)?;
        Ok(gained + u32::from(self.search(&arena, &state)?))
    }

    fn tick(&mut self) -> Result<(), SolveError> {
        self.nodes += 1;
        let over_time = self.nodes.is_multiple_of(1024) && self.started.elapsed() > self.budget.max_time;
        if self.nodes > self.budget.max_nodes || over_time {
            return Err(SolveError::BudgetExhausted {
                nodes: self.nodes,
                elapsed_secs: self.started.elapsed().as_secs_f64(),
            });
        }
        Ok(())
    }

    /// Plays the fixed strategy while it is its turn.
    fn advance_fixed(
        &self,
        arena: &mut Arena,
        mut state: S::State,
        mut last: Option<usize>,
    ) -> Result<(u32, S::State), SolveError> {
        let mut gained = 0;
        while !arena.is_over() && arena.current_player() == self.fixed {
            let (cell, next) = self.strategy.choose(arena, last, &state)?;
            if !arena.is_empty_cell(cell) {
                return Err(SolveError::StrategyNotTotal {
                    strategy: self.strategy.id(),
                    detail: format!("chose cell {} on {}", cell + 1, arena.board()),
                });
            }
            gained += arena.play(cell)?;
            state = next;
            last = None;
        }
        Ok((gained, state))
    }

    fn key(&self, arena: &Arena) -> Result<NodeKey, SolveError> {
        let pending = arena.pending_free_breaker_moves();
        if self.strategy.canonical() {
            let p = arena.position()?;
            Ok(NodeKey::Canonical { key: encode_key(p.components(), p.to_move()), pending })
        } else {
            let (maker, breaker) = arena.masks();
            Ok(NodeKey::Raw { maker, breaker, to_move: arena.current_player(), pending })
        }
    }

    /// Score still to come; the free player is to move.
    fn search(&mut self, arena: &Arena, state: &S::State) -> Result<u16, SolveError> {
        if arena.is_over() {
            return Ok(0);
        }
        let key = (self.key(arena)?, state.clone());
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        self.tick()?;
        let free = arena.current_player();
        let mut best: Option<u16> = None;
        for cell in arena.legal_cells() {
            let mut child = arena.clone();
            let delta = child.play(cell)?;
            let (gained, next) = self.advance_fixed(&mut child, state.clone(), Some(cell))?;
            let v = (delta + gained) as u16 + self.search(&child, &next)?;
            best = Some(match best {
                None => v,
                Some(b) if free == Player::Maker => b.max(v),
                Some(b) => b.min(v),
            });
        }
        let v = best.unwrap_or(0);
        self.memo.insert(key, v);
        Ok(v)
    }
}

/// Score of `spec` when `strategy` plays `fixed_side` and the other side
/// answers perfectly.
pub fn best_response_value<S: Strategy>(
    spec: &GameSpec,
    strategy: &S,
    fixed_side: Player,
    budget: Budget,
) -> Result<u32, SolveError> {
    BestResponse::new(strategy, fixed_side, budget).value(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{formula_values, Position};
    use crate::strategies::{CorruptedBreaker, Lemma3Maker, Lemma4Maker, Lemma5Breaker};

    fn br<S: Strategy>(spec: &GameSpec, s: &S, side: Player) -> u32 {
        best_response_value(spec, s, side, Budget::default()).unwrap()
    }

    #[test]
    fn lemma5_breaker_holds_cycles_to_the_formula() {
        for n in 3..=14 {
            let spec = GameSpec::cycle(n).unwrap();
            assert_eq!(br(&spec, &Lemma5Breaker, Player::Breaker), formula_values(n, 0).u_cycle, "n = {n}");
        }
    }

    #[test]
    fn lemma5_breaker_on_paths() {
        for n in 1..=14 {
            let spec = GameSpec::path(n).unwrap();
            assert!(br(&spec, &Lemma5Breaker, Player::Breaker) <= formula_values(n, 0).u_path, "n = {n}");
        }
    }

    #[test]
    fn lemma3_maker_reaches_the_lower_bound() {
        for n in 1..=12 {
            for k in 0..=3.min(n) {
                let spec = GameSpec::delayed(n, k).unwrap();
                assert!(br(&spec, &Lemma3Maker, Player::Maker) >= formula_values(n, k).alpha_lower, "F({n},{k})");
            }
        }
    }

    #[test]
    fn lemma4_maker_on_paths() {
        for n in 1..=12 {
            let spec = GameSpec::path(n).unwrap();
            assert!(br(&spec, &Lemma4Maker, Player::Maker) >= formula_values(n, 0).u_path, "n = {n}");
        }
    }

    #[test]
    fn corrupt_breaker_is_exposed() {
        let spec = GameSpec::cycle(10).unwrap();
        assert!(br(&spec, &CorruptedBreaker, Player::Breaker) > formula_values(10, 0).u_cycle);
    }

    #[test]
    fn raw_position_bound() {
        let p = Position::parse("F4,G3,H2,H1", Player::Maker).unwrap();
        let g = p.structure_counts().g;
        let v = br(&GameSpec::raw(p), &Lemma5Breaker, Player::Breaker);
        assert!(i64::from(v) <= g);
    }

    #[test]
    fn budget_is_reported() {
        let spec = GameSpec::cycle(12).unwrap();
        let r = best_response_value(&spec, &Lemma3Maker, Player::Maker, Budget::new(10, Budget::default().max_time));
        assert!(matches!(r, Err(SolveError::BudgetExhausted { .. })));
    }
}
