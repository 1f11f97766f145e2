//! Raw cell boards. Cells are indexed from 0 here; component cells are
//! 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::board::{kind_for_flanks, Component, ComponentKind, Move, Player, Position};
use crate::error::BoardError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Topology {
    Path,
    Cycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cell {
    Empty,
    Maker,
    Breaker,
}

impl From<Player> for Cell {
    fn from(p: Player) -> Self {
        match p {
            Player::Maker => Cell::Maker,
            Player::Breaker => Cell::Breaker,
        }
    }
}

/// A maximal run of empty cells, listed in local order (local cell `j` is
/// `cells[j - 1]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub component: Component,
    pub cells: Vec<usize>,
}

impl Run {
    pub fn absolute(&self, local: u32) -> Option<usize> {
        self.cells.get((local as usize).checked_sub(1)?).copied()
    }

    pub fn local_of(&self, abs: usize) -> Option<u32> {
        self.cells.iter().position(|&c| c == abs).map(|i| i as u32 + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExplicitBoard {
    topology: Topology,
    cells: Vec<Cell>,
    /// Maker-owned sentinels beyond the two ends of a path.
    virtual_flanks: (bool, bool),
}

impl ExplicitBoard {
    pub fn path(n: usize, virtual_flanks: (bool, bool)) -> Self {
        ExplicitBoard { topology: Topology::Path, cells: vec![Cell::Empty; n], virtual_flanks }
    }

    pub fn cycle(n: usize) -> Result<Self, BoardError> {
        if n < 3 {
            return Err(BoardError::InvalidGame(format!("cycle needs n >= 3, got {n}")));
        }
        Ok(ExplicitBoard { topology: Topology::Cycle, cells: vec![Cell::Empty; n], virtual_flanks: (false, false) })
    }

    pub fn from_cells(
        topology: Topology,
        cells: Vec<Cell>,
        virtual_flanks: (bool, bool),
    ) -> Result<Self, BoardError> {
        if topology == Topology::Cycle {
            if virtual_flanks != (false, false) {
                return Err(BoardError::InvalidGame("cycles cannot carry virtual flanks".into()));
            }
            if cells.len() < 3 {
                return Err(BoardError::InvalidGame("cycle needs at least 3 cells".into()));
            }
        }
        Ok(ExplicitBoard { topology, cells, virtual_flanks })
    }

    /// Lays the components out on a path, separated by Breaker cells, with
    /// Maker cells standing in for flanked ends.
    pub fn from_position(p: &Position) -> Self {
        let mut cells = Vec::new();
        for (i, c) in p.components().iter().enumerate() {
            if i > 0 {
                cells.push(Cell::Breaker);
            }
            let (left, right) = match c.kind() {
                ComponentKind::F => (Cell::Breaker, Cell::Breaker),
                ComponentKind::G => (Cell::Maker, Cell::Breaker),
                ComponentKind::H => (Cell::Maker, Cell::Maker),
            };
            cells.push(left);
            cells.extend(std::iter::repeat_n(Cell::Empty, c.len() as usize));
            cells.push(right);
        }
        ExplicitBoard { topology: Topology::Path, cells, virtual_flanks: (false, false) }
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn virtual_flanks(&self) -> (bool, bool) {
        self.virtual_flanks
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<Cell> {
        self.cells.get(i).copied()
    }

    pub fn is_full(&self) -> bool {
        !self.cells.contains(&Cell::Empty)
    }

    pub fn empty_cells(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().enumerate().filter(|(_, c)| **c == Cell::Empty).map(|(i, _)| i)
    }

    pub fn count(&self, cell: Cell) -> usize {
        self.cells.iter().filter(|c| **c == cell).count()
    }

    fn left_is_maker(&self, i: usize) -> bool {
        if i > 0 {
            self.cells[i - 1] == Cell::Maker
        } else {
            match self.topology {
                Topology::Cycle => self.cells[self.cells.len() - 1] == Cell::Maker,
                Topology::Path => self.virtual_flanks.0,
            }
        }
    }

    fn right_is_maker(&self, i: usize) -> bool {
        if i + 1 < self.cells.len() {
            self.cells[i + 1] == Cell::Maker
        } else {
            match self.topology {
                Topology::Cycle => self.cells[0] == Cell::Maker,
                Topology::Path => self.virtual_flanks.1,
            }
        }
    }

    /// Claims cell `i`; returns the number of Maker pairs the claim creates.
    pub fn claim(&mut self, i: usize, player: Player) -> Result<u32, BoardError> {
        match self.cells.get(i) {
            None => return Err(BoardError::BoardIndexOutOfRange { index: i, size: self.cells.len() }),
            Some(Cell::Empty) => {}
            Some(_) => return Err(BoardError::Occupied(i)),
        }
        let delta = if player == Player::Maker {
            u32::from(self.left_is_maker(i)) + u32::from(self.right_is_maker(i))
        } else {
            0
        };
        self.cells[i] = player.into();
        Ok(delta)
    }

    pub(crate) fn release(&mut self, i: usize) {
        self.cells[i] = Cell::Empty;
    }

    /// Adjacent Maker-Maker pairs, counting virtual flanks and the cycle's
    /// wrap-around pair.
    pub fn maker_pairs(&self) -> u32 {
        let n = self.cells.len();
        let mut s = self.cells.windows(2).filter(|w| w[0] == Cell::Maker && w[1] == Cell::Maker).count() as u32;
        if n == 0 {
            return s;
        }
        match self.topology {
            Topology::Cycle => {
                if self.cells[0] == Cell::Maker && self.cells[n - 1] == Cell::Maker {
                    s += 1;
                }
            }
            Topology::Path => {
                if self.virtual_flanks.0 && self.cells[0] == Cell::Maker {
                    s += 1;
                }
                if self.virtual_flanks.1 && self.cells[n - 1] == Cell::Maker {
                    s += 1;
                }
            }
        }
        s
    }

    /// Maximal runs of empty cells as oriented components. Fails only for a
    /// completely empty cycle, which has no component form.
    pub fn runs(&self) -> Result<Vec<Run>, BoardError> {
        let n = self.cells.len();
        let order: Vec<usize> = match self.topology {
            Topology::Path => (0..n).collect(),
            Topology::Cycle => {
                let anchor = self
                    .cells
                    .iter()
                    .position(|c| *c != Cell::Empty)
                    .ok_or_else(|| BoardError::InvalidGame("an empty cycle has no component form".into()))?;
                (1..=n).map(|t| (anchor + t) % n).collect()
            }
        };
        let mut runs = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        for (pos, &i) in order.iter().enumerate() {
            if self.cells[i] == Cell::Empty {
                current.push(i);
            }
            let closes = self.cells[i] != Cell::Empty || pos + 1 == order.len();
            if closes && !current.is_empty() {
                let lo = current[0];
                let hi = *current.last().unwrap();
                let left = self.left_is_maker(lo);
                let right = self.right_is_maker(hi);
                let kind = kind_for_flanks(left, right);
                let mut cells = std::mem::take(&mut current);
                if kind == ComponentKind::G && right {
                    cells.reverse();
                }
                let component = Component::new(kind, cells.len() as u32)?;
                runs.push(Run { component, cells });
            }
        }
        Ok(runs)
    }

    pub fn to_position(&self, to_move: Player) -> Result<Position, BoardError> {
        let comps = self.runs()?.into_iter().map(|r| r.component).collect();
        Ok(Position::new(comps, to_move))
    }

    /// The run containing empty cell `abs` and the cell's local index.
    pub fn locate(&self, abs: usize) -> Result<(Run, u32), BoardError> {
        self.runs()?
            .into_iter()
            .find_map(|r| r.local_of(abs).map(|j| (r, j)))
            .ok_or(BoardError::Occupied(abs))
    }

    /// Canonical move equivalent to claiming `abs`, in `position` (which must
    /// be this board's canonical form).
    pub fn canonical_move(&self, position: &Position, abs: usize) -> Result<Move, BoardError> {
        let (run, local) = self.locate(abs)?;
        let index = position
            .index_of(run.component)
            .ok_or_else(|| BoardError::InvalidGame("board and position disagree".into()))?;
        Ok(Move::new(index, local))
    }

    /// Absolute cell for a canonical move of this board's canonical form.
    pub fn absolute_cell(&self, position: &Position, m: Move) -> Result<usize, BoardError> {
        let comp = *position.components().get(m.component_index).ok_or(BoardError::ComponentOutOfRange {
            index: m.component_index,
            count: position.components().len(),
        })?;
        let run = self
            .runs()?
            .into_iter()
            .find(|r| r.component == comp)
            .ok_or_else(|| BoardError::InvalidGame("board and position disagree".into()))?;
        run.absolute(m.cell).ok_or(BoardError::CellOutOfRange { cell: m.cell, len: comp.len() })
    }

    /// Bit masks of Maker and Breaker cells. Boards above 128 cells are
    /// rejected.
    pub fn masks(&self) -> Result<(u128, u128), BoardError> {
        if self.cells.len() > 128 {
            return Err(BoardError::InvalidGame(format!("board of {} cells is too large", self.cells.len())));
        }
        let mut maker = 0u128;
        let mut breaker = 0u128;
        for (i, c) in self.cells.iter().enumerate() {
            match c {
                Cell::Maker => maker |= 1 << i,
                Cell::Breaker => breaker |= 1 << i,
                Cell::Empty => {}
            }
        }
        Ok((maker, breaker))
    }

    /// One line per row: 1-based cell numbers over `.`/`M`/`B` marks.
    pub fn render(&self) -> String {
        let width = self.cells.len().to_string().len().max(1);
        let mut idx = String::new();
        let mut row = String::new();
        if self.virtual_flanks.0 {
            idx.push_str(&format!("{:>w$} ", "", w = width));
            row.push_str(&format!("{:>w$} ", "|M", w = width));
        }
        for (i, c) in self.cells.iter().enumerate() {
            idx.push_str(&format!("{:>w$} ", i + 1, w = width));
            let mark = match c {
                Cell::Empty => ".",
                Cell::Maker => "M",
                Cell::Breaker => "B",
            };
            row.push_str(&format!("{:>w$} ", mark, w = width));
        }
        if self.virtual_flanks.1 {
            row.push_str("M|");
        }
        if self.topology == Topology::Cycle {
            row.push_str("(wraps)");
        }
        format!("{}\n{}", idx.trim_end(), row.trim_end())
    }
}

impl fmt::Display for ExplicitBoard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            f.write_str(match c {
                Cell::Empty => ".",
                Cell::Maker => "M",
                Cell::Breaker => "B",
            })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn board(s: &str, flanks: (bool, bool)) -> ExplicitBoard {
        let cells = s
            .chars()
            .map(|c| match c {
                'M' => Cell::Maker,
                'B' => Cell::Breaker,
                _ => Cell::Empty,
            })
            .collect();
        ExplicitBoard::from_cells(Topology::Path, cells, flanks).unwrap()
    }

    #[test]
    fn runs_pick_kinds_and_orientation() {
        let b = board("..M...B.", (false, false));
        let runs = b.runs().unwrap();
        assert_eq!(runs[0].component, Component::g(2));
        // flanked on the right, so local cell 1 is the cell next to M
        assert_eq!(runs[0].cells, vec![1, 0]);
        assert_eq!(runs[1].component, Component::g(3));
        assert_eq!(runs[1].cells, vec![3, 4, 5]);
        assert_eq!(runs[2].component, Component::f(1));
    }

    #[test]
    fn virtual_flanks_make_h_components() {
        let b = board("...", (true, true));
        assert_eq!(b.to_position(Player::Breaker).unwrap().components(), &[Component::h(3)]);
    }

    #[test]
    fn cycle_with_single_maker_cell_is_h() {
        let mut b = ExplicitBoard::cycle(6).unwrap();
        b.claim(2, Player::Maker).unwrap();
        assert_eq!(b.to_position(Player::Breaker).unwrap().components(), &[Component::h(5)]);
        assert!(ExplicitBoard::cycle(6).unwrap().runs().is_err());
    }

    #[test]
    fn claim_counts_new_pairs() {
        let mut b = board("...", (true, false));
        assert_eq!(b.claim(0, Player::Maker).unwrap(), 1);
        assert_eq!(b.claim(1, Player::Maker).unwrap(), 1);
        assert_eq!(b.claim(2, Player::Breaker).unwrap(), 0);
        assert_eq!(b.maker_pairs(), 2);
        assert!(matches!(b.claim(2, Player::Maker), Err(BoardError::Occupied(2))));
    }

    #[test]
    fn position_round_trip() {
        let p = Position::parse("F3,G2,H1,H4", Player::Maker).unwrap();
        let b = ExplicitBoard::from_position(&p);
        assert_eq!(b.maker_pairs(), 0);
        assert_eq!(b.to_position(Player::Maker).unwrap(), p);
    }

    #[test]
    fn canonical_and_absolute_moves_agree() {
        let p = Position::parse("G3,F2", Player::Maker).unwrap();
        let b = ExplicitBoard::from_position(&p);
        for m in p.legal_moves() {
            let abs = b.absolute_cell(&p, m).unwrap();
            assert_eq!(b.canonical_move(&p, abs).unwrap(), m);
        }
    }
}
