//! Player strategies and the machinery to check what they guarantee.
//!
//! Strategies act on an [`Arena`], a raw path board plus whose turn it is.
//! Maker's block-building strategies are stated in board coordinates, which
//! a canonical [`Position`] does not keep.

mod baseline;
mod best_response;
mod breaker;
mod maker;

use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

pub use baseline::{CorruptedBreaker, GreedyBreaker, GreedyMaker, OptimalStrategy, RandomStrategy};
pub use best_response::{best_response_value, BestResponse};
pub use breaker::{breaker_first_response, check_table_row, extra_move_cell, Lemma5Breaker};
pub use maker::{Lemma3Maker, Lemma4Maker, MakerBlockState, Phase};

use crate::board::{Component, ComponentKind, GameSpec, Player, Position};
use crate::error::{BoardError, SolveError};
use crate::explicit::{Cell, ExplicitBoard, Topology};

/// Largest board a strategy can be run on.
pub const MAX_ARENA_CELLS: usize = 128;

/// A game in progress on a raw path board.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arena {
    board: ExplicitBoard,
    /// Player to move once the free Breaker claims are used up.
    to_move: Player,
    pending_free_breaker_moves: u32,
    score: u32,
}

impl Arena {
    /// Single-component games are laid out as one plain path with virtual
    /// flanks; anything else goes through [`ExplicitBoard::from_position`].
    pub fn from_spec(spec: &GameSpec) -> Result<Self, BoardError> {
        let board = match spec.position.components() {
            [c] => {
                let n = c.len() as usize;
                match c.kind() {
                    ComponentKind::F => ExplicitBoard::path(n, (false, false)),
                    ComponentKind::G => ExplicitBoard::path(n, (true, false)),
                    ComponentKind::H => ExplicitBoard::path(n, (true, true)),
                }
            }
            _ => ExplicitBoard::from_position(&spec.position),
        };
        Self::new(board, spec.position.to_move(), spec.pending_free_breaker_moves)
    }

    pub fn new(board: ExplicitBoard, to_move: Player, pending_free_breaker_moves: u32) -> Result<Self, BoardError> {
        if board.topology() != Topology::Path {
            return Err(BoardError::InvalidGame("strategies play on path boards".into()));
        }
        if board.len() > MAX_ARENA_CELLS {
            return Err(BoardError::InvalidGame(format!(
                "board of {} cells exceeds the {MAX_ARENA_CELLS}-cell limit",
                board.len()
            )));
        }
        Ok(Arena { board, to_move, pending_free_breaker_moves, score: 0 })
    }

    pub fn board(&self) -> &ExplicitBoard {
        &self.board
    }

    pub fn score(&self) -> u32 {
        self.score
    }

    pub fn pending_free_breaker_moves(&self) -> u32 {
        self.pending_free_breaker_moves
    }

    pub fn current_player(&self) -> Player {
        if self.pending_free_breaker_moves > 0 {
            Player::Breaker
        } else {
            self.to_move
        }
    }

    pub fn is_over(&self) -> bool {
        self.board.is_full()
    }

    pub fn is_empty_cell(&self, i: usize) -> bool {
        self.board.get(i) == Some(Cell::Empty)
    }

    pub fn legal_cells(&self) -> Vec<usize> {
        self.board.empty_cells().collect()
    }

    /// Canonical position, with the current player to move.
    pub fn position(&self) -> Result<Position, BoardError> {
        self.board.to_position(self.current_player())
    }

    /// Claims `cell` for the current player and returns the score gained.
    pub fn play(&mut self, cell: usize) -> Result<u32, BoardError> {
        let player = self.current_player();
        let delta = self.board.claim(cell, player)?;
        self.score += delta;
        if self.pending_free_breaker_moves > 0 {
            self.pending_free_breaker_moves -= 1;
        } else {
            self.to_move = self.to_move.opponent();
        }
        Ok(delta)
    }

    pub(crate) fn masks(&self) -> (u128, u128) {
        self.board.masks().expect("arena boards fit in 128 cells")
    }
}

/// A deterministic player. `choose` is only called when it is this
/// strategy's turn on a non-finished board, and must return an empty cell.
pub trait Strategy {
    type State: Clone + Eq + Hash + fmt::Debug;

    fn id(&self) -> String;

    fn initial_state(&self, arena: &Arena) -> Self::State;

    /// `last` is the opponent's claim made just before this turn, if any.
    fn choose(&self, arena: &Arena, last: Option<usize>, state: &Self::State)
        -> Result<(usize, Self::State), SolveError>;

    /// True when the choice depends only on the canonical position and the
    /// opponent's last move in component terms. Lets the best-response
    /// search key its table on canonical positions.
    fn canonical(&self) -> bool {
        false
    }
}

/// First empty cell; the last resort of every strategy.
pub(crate) fn first_empty(arena: &Arena) -> Result<usize, SolveError> {
    arena.board().empty_cells().next().ok_or_else(|| SolveError::StrategyNotTotal {
        strategy: "any".into(),
        detail: "asked to move on a full board".into(),
    })
}

/// Runs sorted into canonical component order. Ties keep board order.
pub(crate) fn canonical_runs(board: &ExplicitBoard) -> Result<Vec<crate::explicit::Run>, BoardError> {
    let mut runs = board.runs()?;
    runs.sort_by_key(|r| r.component);
    Ok(runs)
}

pub(crate) fn find_run(
    runs: &[crate::explicit::Run],
    pred: impl Fn(&Component) -> bool,
) -> Option<&crate::explicit::Run> {
    runs.iter().find(|r| pred(&r.component))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AnyState {
    Stateless,
    Block(MakerBlockState),
}

/// Every strategy the harness can name on the command line.
#[derive(Debug)]
pub enum AnyStrategy {
    Lemma5Breaker(Lemma5Breaker),
    Lemma3Maker(Lemma3Maker),
    Lemma4Maker(Lemma4Maker),
    Random(RandomStrategy),
    GreedyMaker(GreedyMaker),
    GreedyBreaker(GreedyBreaker),
    Optimal(OptimalStrategy),
    CorruptedBreaker(CorruptedBreaker),
}

impl AnyStrategy {
    pub const IDS: [&'static str; 7] = [
        "lemma5-breaker",
        "lemma3-maker",
        "lemma4-maker",
        "random",
        "greedy-maker",
        "greedy-breaker",
        "optimal",
    ];

    /// Parses a strategy id. `random` needs a seed.
    pub fn from_id(id: &str, seed: Option<u64>) -> Result<Self, BoardError> {
        Ok(match id.trim().to_ascii_lowercase().as_str() {
            "lemma5-breaker" => AnyStrategy::Lemma5Breaker(Lemma5Breaker),
            "lemma3-maker" => AnyStrategy::Lemma3Maker(Lemma3Maker),
            "lemma4-maker" => AnyStrategy::Lemma4Maker(Lemma4Maker),
            "random" => {
                let seed = seed.ok_or_else(|| BoardError::Parse("the random strategy needs a seed".into()))?;
                AnyStrategy::Random(RandomStrategy::new(seed))
            }
            "greedy-maker" => AnyStrategy::GreedyMaker(GreedyMaker),
            "greedy-breaker" => AnyStrategy::GreedyBreaker(GreedyBreaker),
            "optimal" => AnyStrategy::Optimal(OptimalStrategy::new()),
            "corrupt-breaker" => AnyStrategy::CorruptedBreaker(CorruptedBreaker),
            other => return Err(BoardError::Parse(format!("unknown strategy `{other}`"))),
        })
    }

    pub fn is_random(&self) -> bool {
        matches!(self, AnyStrategy::Random(_))
    }
}

macro_rules! dispatch {
    ($self:ident, $s:ident => $body:expr) => {
        match $self {
            AnyStrategy::Lemma5Breaker($s) => $body,
            AnyStrategy::Lemma3Maker($s) => $body,
            AnyStrategy::Lemma4Maker($s) => $body,
            AnyStrategy::Random($s) => $body,
            AnyStrategy::GreedyMaker($s) => $body,
            AnyStrategy::GreedyBreaker($s) => $body,
            AnyStrategy::Optimal($s) => $body,
            AnyStrategy::CorruptedBreaker($s) => $body,
        }
    };
}

impl Strategy for AnyStrategy {
    type State = AnyState;

    fn id(&self) -> String {
        dispatch!(self, s => s.id())
    }

    fn initial_state(&self, arena: &Arena) -> AnyState {
        match self {
            AnyStrategy::Lemma3Maker(s) => AnyState::Block(s.initial_state(arena)),
            AnyStrategy::Lemma4Maker(s) => AnyState::Block(s.initial_state(arena)),
            _ => AnyState::Stateless,
        }
    }

    fn choose(&self, arena: &Arena, last: Option<usize>, state: &AnyState) -> Result<(usize, AnyState), SolveError> {
        let block = |s: &AnyState| match s {
            AnyState::Block(b) => b.clone(),
            AnyState::Stateless => MakerBlockState::fresh(arena),
        };
        match self {
            AnyStrategy::Lemma3Maker(s) => {
                let (c, st) = s.choose(arena, last, &block(state))?;
                Ok((c, AnyState::Block(st)))
            }
            AnyStrategy::Lemma4Maker(s) => {
                let (c, st) = s.choose(arena, last, &block(state))?;
                Ok((c, AnyState::Block(st)))
            }
            AnyStrategy::Lemma5Breaker(s) => Ok((s.choose(arena, last, &())?.0, AnyState::Stateless)),
            AnyStrategy::Random(s) => Ok((s.choose(arena, last, &())?.0, AnyState::Stateless)),
            AnyStrategy::GreedyMaker(s) => Ok((s.choose(arena, last, &())?.0, AnyState::Stateless)),
            AnyStrategy::GreedyBreaker(s) => Ok((s.choose(arena, last, &())?.0, AnyState::Stateless)),
            AnyStrategy::Optimal(s) => Ok((s.choose(arena, last, &())?.0, AnyState::Stateless)),
            AnyStrategy::CorruptedBreaker(s) => Ok((s.choose(arena, last, &())?.0, AnyState::Stateless)),
        }
    }

    fn canonical(&self) -> bool {
        dispatch!(self, s => s.canonical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arena_layouts() {
        let a = Arena::from_spec(&GameSpec::path(4).unwrap()).unwrap();
        assert_eq!(a.board().virtual_flanks(), (true, true));
        assert_eq!(a.current_player(), Player::Breaker);
        assert_eq!(a.position().unwrap(), GameSpec::path(4).unwrap().position);

        let a = Arena::from_spec(&GameSpec::cycle(6).unwrap()).unwrap();
        assert_eq!(a.board().len(), 5);
        assert_eq!(a.current_player(), Player::Maker);

        let spec = GameSpec::raw(Position::parse("F2,G3", Player::Maker).unwrap());
        let a = Arena::from_spec(&spec).unwrap();
        assert_eq!(a.position().unwrap(), spec.position);
    }

    #[test]
    fn free_breaker_claims_come_first() {
        let mut a = Arena::from_spec(&GameSpec::delayed(6, 2).unwrap()).unwrap();
        assert_eq!(a.current_player(), Player::Breaker);
        a.play(0).unwrap();
        assert_eq!(a.current_player(), Player::Breaker);
        a.play(5).unwrap();
        assert_eq!(a.current_player(), Player::Maker);
        a.play(2).unwrap();
        assert_eq!(a.current_player(), Player::Breaker);
    }

    #[test]
    fn strategy_ids_parse() {
        for id in AnyStrategy::IDS {
            let s = AnyStrategy::from_id(id, Some(3)).unwrap();
            assert_eq!(s.id().split('(').next().unwrap(), id);
        }
        assert!(AnyStrategy::from_id("random", None).is_err());
        assert!(AnyStrategy::from_id("nope", None).is_err());
    }
}
