//! Memoized minimax over canonical positions.
//!
//! The memo key is the sorted component multiset plus the player to move.
//! The score already banked is not part of the key since the remaining play
//! only adds to it.
//!
//! Two reductions keep the table small:
//! * identical components are only expanded once;
//! * in `F` and `H` components, cell `j` and cell `len + 1 - j` are mirror
//!   images, so only `j <= ceil(len / 2)` is expanded.
//!
//! The explicit-board oracle in [`crate::oracle`] uses neither.

use std::time::{Duration, Instant};

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::board::{split, split_breaker, Component, ComponentKind, GameSpec, Move, Player, Position};
use crate::error::SolveError;

/// Search limits. Running out is reported as an error, never as a value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Budget {
    pub const DEFAULT_MAX_NODES: u64 = 100_000_000;
    pub const DEFAULT_MAX_SECONDS: u64 = 300;

    pub fn new(max_nodes: u64, max_time: Duration) -> Self {
        Budget { max_nodes, max_time }
    }

    pub fn unlimited() -> Self {
        Budget { max_nodes: u64::MAX, max_time: Duration::MAX }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: Self::DEFAULT_MAX_NODES,
            max_time: Duration::from_secs(Self::DEFAULT_MAX_SECONDS),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    /// Score still to be made under optimal play by both sides.
    pub value: u32,
    /// First optimal move in canonical order; `None` for terminal positions.
    pub principal_move: Option<Move>,
    /// Positions evaluated (memo misses) during this call.
    pub nodes_expanded: u64,
}

pub(crate) type Key = Box<[u16]>;

pub(crate) fn encode_component(c: &Component) -> u16 {
    let kind = match c.kind() {
        ComponentKind::F => 0u16,
        ComponentKind::G => 1,
        ComponentKind::H => 2,
    };
    debug_assert!(c.len() < (1 << 14));
    (kind << 14) | c.len() as u16
}

pub(crate) fn decode_component(v: u16) -> Option<Component> {
    let kind = match v >> 14 {
        0 => ComponentKind::F,
        1 => ComponentKind::G,
        2 => ComponentKind::H,
        _ => return None,
    };
    Component::non_empty(kind, u32::from(v & 0x3fff))
}

fn player_tag(p: Player) -> u16 {
    match p {
        Player::Maker => 0,
        Player::Breaker => 1,
    }
}

pub(crate) fn tag_player(tag: u16) -> Option<Player> {
    match tag {
        0 => Some(Player::Maker),
        1 => Some(Player::Breaker),
        _ => None,
    }
}

pub(crate) fn encode_key(comps: &[Component], mover: Player) -> Key {
    let mut key = Vec::with_capacity(comps.len() + 1);
    key.push(player_tag(mover));
    key.extend(comps.iter().map(encode_component));
    key.into_boxed_slice()
}

/// Cells worth expanding in a component.
fn expanded_cells(c: &Component) -> u32 {
    if c.kind().is_symmetric() {
        c.len().div_ceil(2)
    } else {
        c.len()
    }
}

/// `comps` with entry `index` swapped for `parts`, kept sorted.
fn child_components(comps: &[Component], index: usize, parts: &[Component], out: &mut Vec<Component>) {
    out.clear();
    out.extend_from_slice(&comps[..index]);
    out.extend_from_slice(&comps[index + 1..]);
    for &p in parts {
        let at = out.partition_point(|c| *c <= p);
        out.insert(at, p);
    }
}

fn too_large(comps: &[Component]) -> bool {
    comps.iter().any(|c| c.len() >= (1 << 14))
}

#[derive(Debug, Default)]
pub struct Solver {
    pub(crate) memo: FxHashMap<Key, u16>,
    delayed: FxHashMap<(Key, u32), u16>,
    budget: Budget,
    nodes: u64,
    started: Option<Instant>,
}

impl Solver {
    pub fn new() -> Self {
        Self::with_budget(Budget::default())
    }

    pub fn with_budget(budget: Budget) -> Self {
        Solver { budget, ..Default::default() }
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn set_budget(&mut self, budget: Budget) {
        self.budget = budget;
    }

    /// Number of memoized `(position, to_move)` values.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear(&mut self) {
        self.memo.clear();
        self.delayed.clear();
    }

    fn begin(&mut self) {
        self.nodes = 0;
        self.started = Some(Instant::now());
    }

    fn tick(&mut self) -> Result<(), SolveError> {
        self.nodes += 1;
        let over_nodes = self.nodes > self.budget.max_nodes;
        let over_time = self.nodes.is_multiple_of(1024)
            && self.started.is_some_and(|t| t.elapsed() > self.budget.max_time);
        if over_nodes || over_time {
            return Err(SolveError::BudgetExhausted {
                nodes: self.nodes,
                elapsed_secs: self.started.map_or(0.0, |t| t.elapsed().as_secs_f64()),
            });
        }
        Ok(())
    }

    fn check_size(comps: &[Component]) -> Result<(), SolveError> {
        if too_large(comps) {
            return Err(SolveError::Board(crate::error::BoardError::InvalidGame(
                "component longer than 16383 cells".into(),
            )));
        }
        Ok(())
    }

    /// Optimal remaining score and the first optimal move.
    pub fn solve(&mut self, p: &Position) -> Result<SolveResult, SolveError> {
        Self::check_size(p.components())?;
        self.begin();
        let comps = p.components();
        let mover = p.to_move();
        let value = self.eval(comps, mover)?;
        let mut principal = None;
        let mut child = Vec::new();
        'outer: for (i, c) in comps.iter().enumerate() {
            if i > 0 && comps[i - 1] == *c {
                continue;
            }
            for j in 1..=expanded_cells(c) {
                let (delta, parts) = split(mover, c.kind(), c.len(), j)?;
                child_components(comps, i, &parts, &mut child);
                let v = delta as u16 + self.eval(&child, mover.opponent())?;
                if v == value {
                    principal = Some(Move::new(i, j));
                    break 'outer;
                }
            }
        }
        Ok(SolveResult { value: u32::from(value), principal_move: principal, nodes_expanded: self.nodes })
    }

    pub fn value(&mut self, p: &Position) -> Result<u32, SolveError> {
        Self::check_size(p.components())?;
        self.begin();
        self.eval(p.components(), p.to_move()).map(u32::from)
    }

    /// Value of a stored or freshly evaluated position, used by callers that
    /// run their own search on top of the table.
    pub(crate) fn eval(&mut self, comps: &[Component], mover: Player) -> Result<u16, SolveError> {
        if comps.is_empty() {
            return Ok(0);
        }
        let key = encode_key(comps, mover);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        self.tick()?;
        let mut best: Option<u16> = None;
        let mut child = Vec::with_capacity(comps.len() + 1);
        for (i, c) in comps.iter().enumerate() {
            if i > 0 && comps[i - 1] == *c {
                continue;
            }
            for j in 1..=expanded_cells(c) {
                let (delta, parts) = split(mover, c.kind(), c.len(), j)?;
                child_components(comps, i, &parts, &mut child);
                let v = delta as u16 + self.eval(&child, mover.opponent())?;
                best = Some(match (best, mover) {
                    (None, _) => v,
                    (Some(b), Player::Maker) => b.max(v),
                    (Some(b), Player::Breaker) => b.min(v),
                });
            }
        }
        let v = best.unwrap_or(0);
        self.memo.insert(key, v);
        Ok(v)
    }

    /// Breaker first claims `k` cells of `comps`, then Maker moves.
    fn eval_delayed(&mut self, comps: &[Component], k: u32) -> Result<u16, SolveError> {
        if k == 0 {
            return self.eval(comps, Player::Maker);
        }
        if comps.is_empty() {
            return Ok(0);
        }
        let key = (encode_key(comps, Player::Breaker), k);
        if let Some(&v) = self.delayed.get(&key) {
            return Ok(v);
        }
        self.tick()?;
        let mut best = u16::MAX;
        let mut child = Vec::with_capacity(comps.len() + 1);
        for (i, c) in comps.iter().enumerate() {
            if i > 0 && comps[i - 1] == *c {
                continue;
            }
            for j in 1..=expanded_cells(c) {
                let parts = split_breaker(c.kind(), c.len(), j)?;
                child_components(comps, i, &parts, &mut child);
                best = best.min(self.eval_delayed(&child, k - 1)?);
            }
        }
        self.delayed.insert(key, best);
        Ok(best)
    }

    /// Value of `comps` when Breaker makes `k` free claims before Maker
    /// starts. The principal move is Breaker's first free claim.
    pub fn solve_free_breaker_moves(&mut self, comps: &[Component], k: u32) -> Result<SolveResult, SolveError> {
        if k == 0 {
            return self.solve(&Position::new(comps.to_vec(), Player::Maker));
        }
        Self::check_size(comps)?;
        self.begin();
        let value = self.eval_delayed(comps, k)?;
        let mut principal = None;
        let mut child = Vec::new();
        'outer: for (i, c) in comps.iter().enumerate() {
            if i > 0 && comps[i - 1] == *c {
                continue;
            }
            for j in 1..=expanded_cells(c) {
                let parts = split_breaker(c.kind(), c.len(), j)?;
                child_components(comps, i, &parts, &mut child);
                if self.eval_delayed(&child, k - 1)? == value {
                    principal = Some(Move::new(i, j));
                    break 'outer;
                }
            }
        }
        Ok(SolveResult { value: u32::from(value), principal_move: principal, nodes_expanded: self.nodes })
    }

    pub fn solve_spec(&mut self, spec: &GameSpec) -> Result<SolveResult, SolveError> {
        if spec.pending_free_breaker_moves > 0 {
            self.solve_free_breaker_moves(spec.position.components(), spec.pending_free_breaker_moves)
        } else {
            self.solve(&spec.position)
        }
    }

    /// `u(C_n)`.
    pub fn solve_cycle(&mut self, n: u32) -> Result<SolveResult, SolveError> {
        self.solve_spec(&GameSpec::cycle(n)?)
    }

    /// `u(P_n)`.
    pub fn solve_path(&mut self, n: u32) -> Result<SolveResult, SolveError> {
        self.solve_spec(&GameSpec::path(n)?)
    }

    /// Value of `F(n, k)`.
    pub fn solve_delayed(&mut self, n: u32, k: u32) -> Result<SolveResult, SolveError> {
        self.solve_spec(&GameSpec::delayed(n, k)?)
    }

    pub(crate) fn insert_raw(&mut self, key: Key, value: u16) {
        self.memo.insert(key, value);
    }
}

pub fn solve(p: &Position) -> Result<SolveResult, SolveError> {
    Solver::new().solve(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(s: &str, to_move: Player) -> Position {
        Position::parse(s, to_move).unwrap()
    }

    #[test]
    fn small_values() {
        let mut s = Solver::new();
        assert_eq!(s.solve(&pos("H1", Player::Maker)).unwrap().value, 2);
        assert_eq!(s.solve(&pos("H2", Player::Maker)).unwrap().value, 1);
        assert_eq!(s.solve(&pos("F2", Player::Maker)).unwrap().value, 0);
        assert_eq!(s.solve(&pos("F9", Player::Maker)).unwrap().value, 2);
        assert_eq!(s.solve(&pos("", Player::Maker)).unwrap(), SolveResult {
            value: 0,
            principal_move: None,
            nodes_expanded: 0
        });
    }

    #[test]
    fn raw_position_value() {
        // frozen from an explicit-board minimax
        assert_eq!(solve(&pos("F3,G1", Player::Maker)).unwrap().value, 1);
        assert_eq!(solve(&pos("H1,F5", Player::Maker)).unwrap().value, 2);
    }

    #[test]
    fn cycle_and_path_examples() {
        let mut s = Solver::new();
        assert_eq!(s.solve_cycle(4).unwrap().value, 1);
        assert_eq!(s.solve_cycle(9).unwrap().value, 2);
        assert_eq!(s.solve_cycle(3).unwrap().value, 0);
        assert_eq!(s.solve_path(1).unwrap().value, 0);
        assert_eq!(s.solve_path(2).unwrap().value, 1);
        assert_eq!(s.solve_path(11).unwrap().value, 3);
        assert!(s.solve_cycle(2).is_err());
    }

    #[test]
    fn delayed_examples() {
        let mut s = Solver::new();
        assert_eq!(s.solve_delayed(5, 0).unwrap().value, 1);
        for n in 1..=9 {
            assert_eq!(s.solve_delayed(n, n).unwrap().value, 0);
        }
        // frozen from a minimum over all Breaker 1-subsets
        assert_eq!(s.solve_delayed(8, 1).unwrap().value, 1);
        assert_eq!(s.solve_delayed(9, 2).unwrap().value, 1);
        assert!(s.solve_delayed(3, 4).is_err());
    }

    #[test]
    fn principal_move_is_first_optimal() {
        let p = pos("H1,F5", Player::Maker);
        let r = solve(&p).unwrap();
        let m = r.principal_move.unwrap();
        let mut s = Solver::new();
        let mut first = None;
        for mv in p.legal_moves() {
            let (c, d) = p.apply_move(mv).unwrap();
            if d + s.value(&c).unwrap() == r.value {
                first = Some(mv);
                break;
            }
        }
        assert_eq!(Some(m), first);
    }

    #[test]
    fn node_budget_is_an_error() {
        let mut s = Solver::with_budget(Budget::new(10, Duration::from_secs(60)));
        let err = s.solve(&pos("F14", Player::Maker)).unwrap_err();
        assert!(matches!(err, SolveError::BudgetExhausted { .. }));
        // partial tables only hold finished entries
        s.set_budget(Budget::default());
        assert_eq!(s.solve(&pos("F14", Player::Maker)).unwrap().value, 3);
    }

    #[test]
    fn repeated_solves_are_identical() {
        let p = pos("G4,H3,F6", Player::Maker);
        let a = solve(&p).unwrap();
        let mut s = Solver::new();
        let b = s.solve(&p).unwrap();
        let c = s.solve(&p).unwrap();
        assert_eq!((a.value, a.principal_move), (b.value, b.principal_move));
        assert_eq!((b.value, b.principal_move), (c.value, c.principal_move));
        assert_eq!(c.nodes_expanded, 0);
    }

    #[test]
    fn key_codec_round_trips() {
        for c in [Component::f(1), Component::g(77), Component::h(16383)] {
            assert_eq!(decode_component(encode_component(&c)), Some(c));
        }
        assert_eq!(decode_component(3 << 14 | 5), None);
    }
}
