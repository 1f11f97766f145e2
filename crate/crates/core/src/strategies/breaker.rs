//! Breaker's reply table and the strategy built on it.

use crate::board::ComponentKind;
use crate::error::SolveError;
use crate::explicit::{Cell, ExplicitBoard};

use super::{canonical_runs, find_run, first_empty, Arena, Strategy};

fn table_reply(kind: ComponentKind, j: u32) -> u32 {
    let up = match kind {
        ComponentKind::F => matches!(j % 5, 0 | 2),
        ComponentKind::G | ComponentKind::H => matches!(j % 5, 2 | 4),
    };
    if up {
        j + 1
    } else {
        j - 1
    }
}

/// Breaker's answer when Maker claims local cell `j` of a fresh component.
/// `None` means the component has no cell left to answer in.
pub fn breaker_first_response(kind: ComponentKind, len: u32, j: u32) -> Option<u32> {
    if len <= 1 || j == 0 || j > len {
        return None;
    }
    let half = len.div_ceil(2);
    if kind.is_symmetric() && j > half {
        let r = breaker_first_response(kind, len, len + 1 - j)?;
        return Some(len + 1 - r);
    }
    Some(match (kind, j) {
        (_, 1) => 2,
        (ComponentKind::G | ComponentKind::H, 2) => 1,
        (ComponentKind::G, _) if j == len => len - 1,
        (ComponentKind::H, 3) if len == 5 => 2,
        _ => table_reply(kind, j),
    })
}

/// True when the congruence rows (rather than a small-case rule) decide the
/// reply to `j`.
fn general_row(kind: ComponentKind, len: u32, j: u32) -> bool {
    let half = len.div_ceil(2);
    match kind {
        ComponentKind::F => len >= 2 && (2..=half).contains(&j),
        ComponentKind::G => (3..len).contains(&j),
        ComponentKind::H => (3..=half).contains(&j) && !(j == 3 && len == 5),
    }
}

/// Plays Maker's `j` and Breaker's reply on a real board and checks the
/// congruence the reply is meant to produce on the pieces left behind.
///
/// `Ok(false)` means a small-case rule applies instead, `Ok(true)` that the
/// row holds.
pub fn check_table_row(kind: ComponentKind, len: u32, j: u32) -> Result<bool, String> {
    if !general_row(kind, len, j) {
        return Ok(false);
    }
    let r = breaker_first_response(kind, len, j).ok_or("no reply")?;
    let flanks = match kind {
        ComponentKind::F => (false, false),
        ComponentKind::G => (true, false),
        ComponentKind::H => (true, true),
    };
    let mut board = ExplicitBoard::path(len as usize, flanks);
    let m = (j - 1) as usize;
    board.claim(m, crate::Player::Maker).map_err(|e| e.to_string())?;
    board.claim((r - 1) as usize, crate::Player::Breaker).map_err(|e| e.to_string())?;
    let runs = board.runs().map_err(|e| e.to_string())?;
    let left = runs.iter().find(|run| run.cells.iter().all(|&c| c < m)).map(|run| run.component);
    let pieces: Vec<_> = runs.iter().map(|run| run.component).collect();
    let length_of = |k: ComponentKind| pieces.iter().find(|c| c.kind() == k).map_or(0, |c| c.len());

    let (name, value, want) = match (kind, j % 5) {
        (ComponentKind::F, 0) => ("b", length_of(ComponentKind::G), 4),
        (ComponentKind::F, 1) => ("a", length_of(ComponentKind::F), 4),
        (ComponentKind::F, 2) => ("b", length_of(ComponentKind::G), 1),
        (ComponentKind::F, 3) => ("a", length_of(ComponentKind::F), 1),
        (ComponentKind::F, _) => ("a", length_of(ComponentKind::F), 2),
        (ComponentKind::G, 0) => ("a", left.map_or(0, |c| c.len()), 3),
        (ComponentKind::G, 1) => ("a", left.map_or(0, |c| c.len()), 4),
        (ComponentKind::G, 2) => ("c", length_of(ComponentKind::H), 1),
        (ComponentKind::G, 3) => ("a", left.map_or(0, |c| c.len()), 1),
        (ComponentKind::G, _) => ("c", length_of(ComponentKind::H), 3),
        (ComponentKind::H, 0) => ("b", length_of(ComponentKind::G), 3),
        (ComponentKind::H, 1) => ("b", length_of(ComponentKind::G), 4),
        (ComponentKind::H, 2) => ("a", length_of(ComponentKind::H), 1),
        (ComponentKind::H, 3) => ("b", length_of(ComponentKind::G), 1),
        (ComponentKind::H, _) => ("a", length_of(ComponentKind::H), 3),
    };
    let allowed: &[ComponentKind] = match (kind, r > j) {
        (ComponentKind::F, _) => &[ComponentKind::F, ComponentKind::G],
        (ComponentKind::G, false) => &[ComponentKind::G],
        (ComponentKind::G, true) => &[ComponentKind::H, ComponentKind::F],
        (ComponentKind::H, _) => &[ComponentKind::H, ComponentKind::G],
    };
    if let Some(bad) = pieces.iter().find(|c| !allowed.contains(&c.kind())) {
        return Err(format!("{}({len}) j={j}: unexpected piece {bad}", kind.letter()));
    }
    if value % 5 != want {
        return Err(format!("{}({len}) j={j}: reply {r} leaves {name}={value}, want {name} = {want} mod 5", kind.letter()));
    }
    Ok(true)
}

/// Where Breaker spends a move that has no reply in Maker's component.
pub fn extra_move_cell(board: &ExplicitBoard) -> Option<usize> {
    let runs = canonical_runs(board).ok()?;
    let pick = |pred: &dyn Fn(ComponentKind, u32) -> bool, local: &dyn Fn(u32) -> u32| {
        find_run(&runs, |c| pred(c.kind(), c.len())).and_then(|r| r.absolute(local(r.component.len())))
    };
    use ComponentKind::*;
    pick(&|k, l| k == H && l == 1, &|_| 1)
        .or_else(|| pick(&|k, l| k == H && l == 2, &|_| 1))
        .or_else(|| pick(&|k, l| k == H && l >= 3, &|_| 1))
        .or_else(|| pick(&|k, _| k == G, &|_| 1))
        .or_else(|| pick(&|k, l| k == F && l >= 3, &|l| l - 2))
        .or_else(|| runs.first().and_then(|r| r.absolute(1)))
}

/// Answers Maker inside the component she just played in, following the
/// reply table, and otherwise spends the move by [`extra_move_cell`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Lemma5Breaker;

impl Lemma5Breaker {
    fn reply(arena: &Arena, last: usize) -> Option<usize> {
        let board = arena.board();
        if board.get(last) != Some(Cell::Maker) {
            return None;
        }
        let mut before = board.clone();
        before.release(last);
        let (run, j) = before.locate(last).ok()?;
        let r = breaker_first_response(run.component.kind(), run.component.len(), j)?;
        run.absolute(r).filter(|&abs| arena.is_empty_cell(abs))
    }
}

impl Strategy for Lemma5Breaker {
    type State = ();

    fn id(&self) -> String {
        "lemma5-breaker".into()
    }

    fn initial_state(&self, _: &Arena) {}

    fn choose(&self, arena: &Arena, last: Option<usize>, _: &()) -> Result<(usize, ()), SolveError> {
        let cell = last
            .and_then(|c| Self::reply(arena, c))
            .or_else(|| extra_move_cell(arena.board()))
            .map_or_else(|| first_empty(arena), Ok)?;
        Ok((cell, ()))
    }

    fn canonical(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{GameSpec, Player, Position};
    use ComponentKind::*;

    #[test]
    fn table_rows() {
        // F column, j = 5..9
        let got: Vec<_> = (5..=9).map(|j| breaker_first_response(F, 20, j).unwrap()).collect();
        assert_eq!(got, [6, 5, 8, 7, 8]);
        let got: Vec<_> = (5..=9).map(|j| breaker_first_response(G, 20, j).unwrap()).collect();
        assert_eq!(got, [4, 5, 8, 7, 10]);
        let got: Vec<_> = (5..=9).map(|j| breaker_first_response(H, 20, j).unwrap()).collect();
        assert_eq!(got, [4, 5, 8, 7, 10]);
    }

    #[test]
    fn small_cases() {
        assert_eq!(breaker_first_response(H, 1, 1), None);
        assert_eq!(breaker_first_response(G, 1, 1), None);
        assert_eq!(breaker_first_response(F, 1, 1), None);
        assert_eq!(breaker_first_response(H, 2, 1), Some(2));
        assert_eq!(breaker_first_response(H, 2, 2), Some(1));
        assert_eq!(breaker_first_response(H, 5, 3), Some(2));
        assert_eq!(breaker_first_response(G, 6, 6), Some(5));
        assert_eq!(breaker_first_response(G, 6, 2), Some(1));
        assert_eq!(breaker_first_response(F, 9, 1), Some(2));
    }

    #[test]
    fn symmetric_kinds_mirror() {
        for len in 2..30 {
            for j in 1..=len {
                for kind in [F, H] {
                    let r = breaker_first_response(kind, len, j).unwrap();
                    let m = breaker_first_response(kind, len, len + 1 - j).unwrap();
                    if 2 * j != len + 1 {
                        assert_eq!(m, len + 1 - r, "{kind:?}({len}) j={j}");
                    }
                    assert_eq!(r.abs_diff(j), 1);
                }
            }
        }
    }

    #[test]
    fn every_general_row_holds() {
        let mut checked = 0;
        for len in 1..=100 {
            for kind in ComponentKind::ALL {
                for j in 1..=len {
                    if check_table_row(kind, len, j).unwrap() {
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 5000);
    }

    #[test]
    fn follows_maker_into_component() {
        let mut arena = Arena::from_spec(&GameSpec::delayed(9, 0).unwrap()).unwrap();
        arena.play(3).unwrap();
        let (c, ()) = Lemma5Breaker.choose(&arena, Some(3), &()).unwrap();
        // local 4 of F(9) is row 4, answered by j - 1
        assert_eq!(c, 2);
    }

    #[test]
    fn extra_move_priority() {
        let spec = GameSpec::raw(Position::parse("F5,G2,H1,H3", Player::Breaker).unwrap());
        let arena = Arena::from_spec(&spec).unwrap();
        let c = extra_move_cell(arena.board()).unwrap();
        let (run, j) = arena.board().locate(c).unwrap();
        assert_eq!((run.component.to_string(), j), ("H1".to_string(), 1));

        let spec = GameSpec::raw(Position::parse("F5,F2", Player::Breaker).unwrap());
        let arena = Arena::from_spec(&spec).unwrap();
        let (run, j) = arena.board().locate(extra_move_cell(arena.board()).unwrap()).unwrap();
        assert_eq!((run.component.to_string(), j), ("F5".to_string(), 3));
    }

    #[test]
    fn breaker_first_on_path_takes_an_end() {
        let arena = Arena::from_spec(&GameSpec::path(7).unwrap()).unwrap();
        let (c, ()) = Lemma5Breaker.choose(&arena, None, &()).unwrap();
        assert_eq!(c, 0);
    }
}
