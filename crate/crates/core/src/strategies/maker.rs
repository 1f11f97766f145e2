//! Maker's block-building strategies.
//!
//! [`Lemma3Maker`] grows one consecutive block at a time inside a shrinking
//! region of the board. [`Lemma4Maker`] first grows blocks from both ends of
//! a flanked path, then plays like [`Lemma3Maker`] on what lies between.

use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::explicit::Cell;

use super::{first_empty, Arena, Strategy};

/// Cells are 0-based board indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Phase {
    /// Growing blocks from the two ends of the board.
    Endpoint,
    /// About to open a fresh interval inside the region.
    Recursed,
    /// Growing the block `t..=e` inside the interval `lo..=hi`.
    Block { lo: u16, hi: u16, t: u16, e: u16 },
    /// Filling the three-cell interval starting at `lo`.
    ShortInterval { lo: u16 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MakerBlockState {
    /// Bit `i` set while cell `i` is still available for new intervals.
    pub region: u128,
    pub phase: Phase,
}

fn span(lo: usize, hi: usize) -> u128 {
    if lo > hi {
        return 0;
    }
    let upper = if hi >= 127 { u128::MAX } else { (1u128 << (hi + 1)) - 1 };
    upper & !((1u128 << lo) - 1)
}

impl MakerBlockState {
    /// Starting state for [`Lemma3Maker`]: every cell is in the region.
    pub fn fresh(arena: &Arena) -> Self {
        let n = arena.board().len();
        MakerBlockState { region: if n == 0 { 0 } else { span(0, n - 1) }, phase: Phase::Recursed }
    }

    fn in_region(&self, i: usize) -> bool {
        i < 128 && self.region >> i & 1 == 1
    }

    /// Longest run of empty region cells; leftmost on ties.
    fn widest_interval(&self, arena: &Arena) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut start = None;
        let n = arena.board().len();
        for i in 0..=n {
            let open = i < n && self.in_region(i) && arena.is_empty_cell(i);
            match (open, start) {
                (true, None) => start = Some(i),
                (false, Some(s)) => {
                    if best.is_none_or(|(lo, hi)| i - s > hi + 1 - lo) {
                        best = Some((s, i - 1));
                    }
                    start = None;
                }
                _ => {}
            }
        }
        best
    }
}

fn lemma3_step(arena: &Arena, state: &MakerBlockState) -> Result<(usize, MakerBlockState), SolveError> {
    let empty = |i: usize| arena.is_empty_cell(i);
    let n = arena.board().len();
    let mut st = state.clone();
    loop {
        match st.phase {
            Phase::Recursed | Phase::Endpoint => {
                st.phase = Phase::Recursed;
                let Some((lo, hi)) = st.widest_interval(arena) else {
                    return Ok((first_empty(arena)?, st));
                };
                let width = hi + 1 - lo;
                if width >= 4 {
                    let t = (lo + 2) as u16;
                    st.phase = Phase::Block { lo: lo as u16, hi: hi as u16, t, e: t };
                    return Ok((lo + 2, st));
                }
                if width == 3 {
                    st.phase = Phase::ShortInterval { lo: lo as u16 };
                    return Ok((lo + 1, st));
                }
                return Ok((lo, st));
            }
            Phase::Block { lo, hi, t, e } => {
                let (lo, hi, t, e) = (lo as usize, hi as usize, t as usize, e as usize);
                if e < hi && empty(e + 1) {
                    st.phase = Phase::Block { lo: lo as u16, hi: hi as u16, t: t as u16, e: (e + 1) as u16 };
                    return Ok((e + 1, st));
                }
                if t > lo && empty(t - 1) {
                    st.phase = Phase::Block { lo: lo as u16, hi: hi as u16, t: (t - 1) as u16, e: e as u16 };
                    return Ok((t - 1, st));
                }
                st.region &= !span(lo, (e + 1).min(n - 1));
                st.phase = Phase::Recursed;
            }
            Phase::ShortInterval { lo } => {
                let lo = lo as usize;
                if empty(lo + 2) {
                    return Ok((lo + 2, st));
                }
                if empty(lo) {
                    return Ok((lo, st));
                }
                st.region &= !span(lo, lo + 2);
                let blocker = |i: usize| st.in_region(i) && arena.board().get(i) == Some(Cell::Breaker);
                if lo + 3 < n && blocker(lo + 3) {
                    st.region &= !span(lo + 3, lo + 3);
                } else if lo > 0 && blocker(lo - 1) {
                    st.region &= !span(lo - 1, lo - 1);
                }
                st.phase = Phase::Recursed;
            }
        }
    }
}

/// Block-by-block Maker for a plain path with Breaker's claims made anywhere.
#[derive(Clone, Copy, Debug, Default)]
pub struct Lemma3Maker;

impl Strategy for Lemma3Maker {
    type State = MakerBlockState;

    fn id(&self) -> String {
        "lemma3-maker".into()
    }

    fn initial_state(&self, arena: &Arena) -> MakerBlockState {
        MakerBlockState::fresh(arena)
    }

    fn choose(&self, arena: &Arena, _: Option<usize>, state: &MakerBlockState) -> Result<(usize, MakerBlockState), SolveError> {
        lemma3_step(arena, state)
    }
}

/// Maker for a path flanked by her own cells at both ends.
#[derive(Clone, Copy, Debug, Default)]
pub struct Lemma4Maker;

impl Strategy for Lemma4Maker {
    type State = MakerBlockState;

    fn id(&self) -> String {
        "lemma4-maker".into()
    }

    fn initial_state(&self, _: &Arena) -> MakerBlockState {
        MakerBlockState { region: 0, phase: Phase::Endpoint }
    }

    fn choose(&self, arena: &Arena, _: Option<usize>, state: &MakerBlockState) -> Result<(usize, MakerBlockState), SolveError> {
        if state.phase != Phase::Endpoint {
            return lemma3_step(arena, state);
        }
        let board = arena.board();
        let cells = board.cells();
        let n = cells.len();
        let prefix = cells.iter().take_while(|c| **c == Cell::Maker).count();
        let suffix = cells.iter().rev().take_while(|c| **c == Cell::Maker).count();
        if prefix < n && board.count(Cell::Maker) == prefix + suffix {
            if arena.is_empty_cell(prefix) {
                return Ok((prefix, state.clone()));
            }
            if arena.is_empty_cell(n - 1 - suffix) {
                return Ok((n - 1 - suffix, state.clone()));
            }
        }
        let inner = if prefix + suffix + 2 < n { span(prefix + 1, n - suffix - 2) } else { 0 };
        lemma3_step(arena, &MakerBlockState { region: inner, phase: Phase::Recursed })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{GameSpec, Player};

    fn arena(spec: GameSpec) -> Arena {
        Arena::from_spec(&spec).unwrap()
    }

    #[test]
    fn spans() {
        assert_eq!(span(0, 0), 1);
        assert_eq!(span(1, 3), 0b1110);
        assert_eq!(span(0, 127), u128::MAX);
        assert_eq!(span(4, 2), 0);
    }

    #[test]
    fn lemma3_opens_at_local_three_and_extends_right() {
        let mut a = arena(GameSpec::delayed(9, 0).unwrap());
        let s = Lemma3Maker.initial_state(&a);
        let (c, s) = Lemma3Maker.choose(&a, None, &s).unwrap();
        assert_eq!(c, 2);
        a.play(c).unwrap();
        a.play(8).unwrap();
        let (c, s) = Lemma3Maker.choose(&a, Some(8), &s).unwrap();
        assert_eq!(c, 3);
        a.play(c).unwrap();
        a.play(4).unwrap();
        let (c, _) = Lemma3Maker.choose(&a, Some(4), &s).unwrap();
        assert_eq!(c, 1);
    }

    #[test]
    fn lemma3_short_interval() {
        let a = arena(GameSpec::delayed(3, 0).unwrap());
        let (c, s) = Lemma3Maker.choose(&a, None, &Lemma3Maker.initial_state(&a)).unwrap();
        assert_eq!((c, s.phase), (1, Phase::ShortInterval { lo: 0 }));
    }

    #[test]
    fn lemma4_claims_ends() {
        let mut a = arena(GameSpec::path(7).unwrap());
        a.play(3).unwrap();
        assert_eq!(a.current_player(), Player::Maker);
        let s = Lemma4Maker.initial_state(&a);
        let (c, s) = Lemma4Maker.choose(&a, Some(3), &s).unwrap();
        assert_eq!(c, 0);
        a.play(c).unwrap();
        a.play(1).unwrap();
        let (c, _) = Lemma4Maker.choose(&a, Some(1), &s).unwrap();
        assert_eq!(c, 6);

        let mut a = arena(GameSpec::path(2).unwrap());
        a.play(0).unwrap();
        let (c, _) = Lemma4Maker.choose(&a, Some(0), &Lemma4Maker.initial_state(&a)).unwrap();
        assert_eq!(c, 1);
    }

    #[test]
    fn lemma4_switches_to_blocks_when_both_ends_are_cut() {
        let mut a = arena(GameSpec::path(9).unwrap());
        a.play(0).unwrap();
        a.play(8).unwrap();
        a.play(7).unwrap();
        let (c, s) = Lemma4Maker.choose(&a, Some(7), &Lemma4Maker.initial_state(&a)).unwrap();
        assert_eq!(s.region, span(1, 6));
        assert_eq!(c, 3);
        assert_eq!(s.phase, Phase::Block { lo: 1, hi: 6, t: 3, e: 3 });
    }
}
