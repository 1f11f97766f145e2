//! Strategy-against-strategy playouts with replayable transcripts.

use serde::{Deserialize, Serialize};

use crate::board::{formula_values, GameSpec, Move, Origin, Player};
use crate::error::{BoardError, SolveError};
use crate::strategies::{Arena, Strategy};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ply {
    pub player: Player,
    /// Board cell, 1-based.
    pub cell: usize,
    /// The same claim as a move on the canonical position before it.
    pub canonical: Move,
    pub delta: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaReference {
    pub label: String,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchRecord {
    pub spec: String,
    pub maker: String,
    pub breaker: String,
    pub transcript: Vec<Ply>,
    pub final_score: u32,
    pub references: Vec<FormulaReference>,
}

fn references(spec: &GameSpec) -> Vec<FormulaReference> {
    let r = |label: &str, value: u32| FormulaReference { label: label.into(), value: i64::from(value) };
    match spec.origin {
        Origin::Cycle(n) => vec![r("cycle_formula", formula_values(n, 0).u_cycle)],
        Origin::Path(n) => vec![r("path_formula", formula_values(n, 0).u_path)],
        Origin::DelayedF { n, k } => {
            let f = formula_values(n, k);
            let mut v = vec![r("delayed_lower_bound", f.alpha_lower)];
            if k == 0 {
                v.push(r("delayed_exact", f.alpha_exact));
            }
            v
        }
        Origin::RawPosition if spec.first_player() == Player::Maker => {
            vec![FormulaReference { label: "structure_bound".into(), value: spec.position.structure_counts().g }]
        }
        Origin::RawPosition => Vec::new(),
    }
}

/// Plays `spec` out with the two strategies.
pub fn play_match<M: Strategy, B: Strategy>(spec: &GameSpec, maker: &M, breaker: &B) -> Result<MatchRecord, SolveError> {
    let mut arena = Arena::from_spec(spec)?;
    let mut maker_state = maker.initial_state(&arena);
    let mut breaker_state = breaker.initial_state(&arena);
    let mut last: Option<(Player, usize)> = None;
    let mut transcript = Vec::new();
    while !arena.is_over() {
        let player = arena.current_player();
        let opponent_last = last.filter(|(p, _)| *p != player).map(|(_, c)| c);
        let (cell, id) = match player {
            Player::Maker => {
                let (c, s) = maker.choose(&arena, opponent_last, &maker_state)?;
                maker_state = s;
                (c, maker.id())
            }
            Player::Breaker => {
                let (c, s) = breaker.choose(&arena, opponent_last, &breaker_state)?;
                breaker_state = s;
                (c, breaker.id())
            }
        };
        if !arena.is_empty_cell(cell) {
            return Err(SolveError::StrategyNotTotal {
                strategy: id,
                detail: format!("chose cell {} on {}", cell + 1, arena.board()),
            });
        }
        let canonical = arena.board().canonical_move(&arena.position()?, cell)?;
        let delta = arena.play(cell)?;
        transcript.push(Ply { player, cell: cell + 1, canonical, delta });
        last = Some((player, cell));
    }
    Ok(MatchRecord {
        spec: spec.origin.to_string(),
        maker: maker.id(),
        breaker: breaker.id(),
        transcript,
        final_score: arena.score(),
        references: references(spec),
    })
}

/// Replays the canonical moves of `record` from `spec` and returns the
/// score they add up to. Fails if a move is illegal, a recorded delta is
/// wrong, or the total differs from the recorded score.
pub fn replay(spec: &GameSpec, record: &MatchRecord) -> Result<u32, BoardError> {
    let mut position = spec.position.clone();
    let mut pending = spec.pending_free_breaker_moves;
    let mut total = 0;
    for (i, ply) in record.transcript.iter().enumerate() {
        if pending > 0 {
            position = position.with_to_move(Player::Breaker);
        }
        if position.to_move() != ply.player {
            return Err(BoardError::InvalidGame(format!("ply {}: {} moved out of turn", i + 1, ply.player)));
        }
        let (next, delta) = position.apply_move(ply.canonical)?;
        if delta != ply.delta {
            return Err(BoardError::InvalidGame(format!("ply {}: delta {delta}, recorded {}", i + 1, ply.delta)));
        }
        total += delta;
        position = next;
        if pending > 0 {
            pending -= 1;
            position = position.with_to_move(spec.position.to_move());
        }
    }
    if !position.is_terminal() {
        return Err(BoardError::InvalidGame("transcript stops before the end".into()));
    }
    if total != record.final_score {
        return Err(BoardError::InvalidGame(format!("replayed {total}, recorded {}", record.final_score)));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::{AnyStrategy, Lemma3Maker, Lemma4Maker, Lemma5Breaker, RandomStrategy};

    #[test]
    fn lemma_strategies_on_path_13() {
        let spec = GameSpec::path(13).unwrap();
        let rec = play_match(&spec, &Lemma4Maker, &Lemma5Breaker).unwrap();
        assert_eq!(rec.final_score, 3);
        assert_eq!(replay(&spec, &rec).unwrap(), 3);
    }

    #[test]
    fn lemma3_against_random_on_cycle_10() {
        let spec = GameSpec::cycle(10).unwrap();
        let rec = play_match(&spec, &Lemma3Maker, &RandomStrategy::new(1)).unwrap();
        assert!(rec.final_score >= 2);
        replay(&spec, &rec).unwrap();
    }

    #[test]
    fn random_matches_are_reproducible() {
        let spec = GameSpec::delayed(11, 2).unwrap();
        let a = play_match(&spec, &RandomStrategy::new(5), &RandomStrategy::new(6)).unwrap();
        let b = play_match(&spec, &RandomStrategy::new(5), &RandomStrategy::new(6)).unwrap();
        assert_eq!(a, b);
        replay(&spec, &a).unwrap();
        assert_eq!(a.transcript.iter().take(2).filter(|p| p.player == Player::Breaker).count(), 2);
    }

    #[test]
    fn tampered_transcript_fails_replay() {
        let spec = GameSpec::cycle(9).unwrap();
        let mut rec = play_match(&spec, &AnyStrategy::from_id("optimal", None).unwrap(), &Lemma5Breaker).unwrap();
        assert_eq!(rec.final_score, 2);
        rec.final_score += 1;
        assert!(replay(&spec, &rec).is_err());
    }
}
