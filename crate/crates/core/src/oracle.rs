//! Plain minimax over raw cell states.
//!
//! This is the reference the canonical solver is checked against, so it
//! deliberately shares nothing with it: no components, no mirror pruning,
//! no duplicate skipping. The only concession is a table keyed on the raw
//! cell contents, which keeps boards of a dozen cells tractable.

use rustc_hash::FxHashMap;

use crate::board::Player;
use crate::error::SolveError;
use crate::explicit::{ExplicitBoard, Topology};

pub const DEFAULT_ORACLE_CAP: usize = 14;

/// Brute-force evaluator for one board shape (size, topology, flanks).
#[derive(Debug)]
pub struct BruteForce {
    size: usize,
    topology: Topology,
    flanks: (bool, bool),
    full: u128,
    memo: FxHashMap<(u128, u128, bool), u16>,
}

impl BruteForce {
    pub fn new(size: usize, topology: Topology, flanks: (bool, bool), cap: usize) -> Result<Self, SolveError> {
        if size > cap || size > 128 {
            return Err(SolveError::OracleCapExceeded { size, cap });
        }
        let full = if size == 128 { u128::MAX } else { (1u128 << size) - 1 };
        Ok(BruteForce { size, topology, flanks, full, memo: FxHashMap::default() })
    }

    pub fn for_board(board: &ExplicitBoard, cap: usize) -> Result<Self, SolveError> {
        Self::new(board.len(), board.topology(), board.virtual_flanks(), cap)
    }

    fn pairs(&self, maker: u128) -> u32 {
        let n = self.size;
        if n == 0 {
            return 0;
        }
        let mut s = (maker & (maker >> 1)).count_ones();
        let first = maker & 1 == 1;
        let last = (maker >> (n - 1)) & 1 == 1;
        match self.topology {
            Topology::Cycle => s += u32::from(first && last),
            Topology::Path => {
                s += u32::from(self.flanks.0 && first);
                s += u32::from(self.flanks.1 && last);
            }
        }
        s
    }

    fn eval(&mut self, maker: u128, breaker: u128, maker_to_move: bool) -> u16 {
        let taken = maker | breaker;
        if taken == self.full {
            return self.pairs(maker) as u16;
        }
        if let Some(&v) = self.memo.get(&(maker, breaker, maker_to_move)) {
            return v;
        }
        let mut best: Option<u16> = None;
        for i in 0..self.size {
            let bit = 1u128 << i;
            if taken & bit != 0 {
                continue;
            }
            let v = if maker_to_move {
                self.eval(maker | bit, breaker, false)
            } else {
                self.eval(maker, breaker | bit, true)
            };
            best = Some(match best {
                None => v,
                Some(b) if maker_to_move => b.max(v),
                Some(b) => b.min(v),
            });
        }
        let v = best.unwrap_or(0);
        self.memo.insert((maker, breaker, maker_to_move), v);
        v
    }

    /// Final number of Maker pairs on `board` under optimal play, including
    /// pairs already present.
    pub fn value(&mut self, board: &ExplicitBoard, to_move: Player) -> Result<u32, SolveError> {
        if board.len() != self.size || board.topology() != self.topology || board.virtual_flanks() != self.flanks {
            return Err(SolveError::Board(crate::error::BoardError::InvalidGame(
                "board shape does not match this oracle".into(),
            )));
        }
        let (maker, breaker) = board.masks()?;
        Ok(u32::from(self.eval(maker, breaker, to_move == Player::Maker)))
    }

    /// `F(n, k)` by the definition: the minimum over every set of `k` Breaker
    /// cells of the Maker-first value.
    pub fn delayed_path_value(&mut self, k: usize) -> Result<u32, SolveError> {
        if self.topology != Topology::Path || self.flanks != (false, false) || k > self.size {
            return Err(SolveError::Board(crate::error::BoardError::InvalidGame(
                "delayed value needs a plain path and k <= n".into(),
            )));
        }
        let mut best = u32::MAX;
        for breaker in 0..=self.full {
            if breaker.count_ones() as usize == k {
                best = best.min(u32::from(self.eval(0, breaker, true)));
            }
        }
        Ok(best)
    }
}

/// One-shot oracle call with the given cap.
pub fn brute_force_explicit_capped(board: &ExplicitBoard, to_move: Player, cap: usize) -> Result<u32, SolveError> {
    BruteForce::for_board(board, cap)?.value(board, to_move)
}

/// One-shot oracle call with the default cap of 14 cells.
pub fn brute_force_explicit(board: &ExplicitBoard, to_move: Player) -> Result<u32, SolveError> {
    brute_force_explicit_capped(board, to_move, DEFAULT_ORACLE_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let b = ExplicitBoard::path(3, (false, false));
        assert_eq!(brute_force_explicit(&b, Player::Maker).unwrap(), 1);
        let b = ExplicitBoard::path(1, (true, true));
        assert_eq!(brute_force_explicit(&b, Player::Maker).unwrap(), 2);
        let b = ExplicitBoard::cycle(5).unwrap();
        assert_eq!(brute_force_explicit(&b, Player::Breaker).unwrap(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let b = ExplicitBoard::path(15, (false, false));
        assert!(matches!(brute_force_explicit(&b, Player::Maker), Err(SolveError::OracleCapExceeded { .. })));
    }

    #[test]
    fn cycle_values_match_reference() {
        // independent enumeration, n = 3..=10
        let expected = [0, 1, 1, 1, 1, 1, 2, 2];
        for (n, want) in (3..=10).zip(expected) {
            let b = ExplicitBoard::cycle(n).unwrap();
            assert_eq!(brute_force_explicit(&b, Player::Breaker).unwrap(), want, "n = {n}");
        }
    }

    #[test]
    fn delayed_by_subset_minimum() {
        let mut bf = BruteForce::new(8, Topology::Path, (false, false), 14).unwrap();
        assert_eq!(bf.delayed_path_value(1).unwrap(), 1);
        let mut bf = BruteForce::new(5, Topology::Path, (false, false), 14).unwrap();
        assert_eq!(bf.delayed_path_value(0).unwrap(), 1);
    }

    #[test]
    fn existing_pairs_count() {
        let mut b = ExplicitBoard::path(4, (false, false));
        b.claim(0, Player::Maker).unwrap();
        b.claim(1, Player::Maker).unwrap();
        b.claim(2, Player::Breaker).unwrap();
        b.claim(3, Player::Breaker).unwrap();
        assert_eq!(brute_force_explicit(&b, Player::Maker).unwrap(), 1);
    }
}
