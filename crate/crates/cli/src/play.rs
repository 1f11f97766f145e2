//! Text REPL: a human against an engine strategy.

use std::io::{BufRead, Write};

use anyhow::Result;
use isolator_core::harness::Ply;
use isolator_core::strategies::{AnyState, AnyStrategy};
use isolator_core::{Arena, GameSpec, Player, Strategy};

#[derive(Debug, PartialEq, Eq)]
pub struct Session {
    pub transcript: Vec<Ply>,
    pub score: u32,
    pub finished: bool,
}

enum Input {
    Quit,
    Cell(usize),
    Invalid(String),
}

fn read_input(line: &str, arena: &Arena) -> Input {
    let t = line.trim();
    if matches!(t.to_ascii_lowercase().as_str(), "q" | "quit" | "exit") {
        return Input::Quit;
    }
    match t.parse::<usize>() {
        Ok(c) if (1..=arena.board().len()).contains(&c) => {
            if arena.is_empty_cell(c - 1) {
                Input::Cell(c - 1)
            } else {
                Input::Invalid(format!("cell {c} is taken"))
            }
        }
        Ok(c) => Input::Invalid(format!("cell {c} is off the board (1..={})", arena.board().len())),
        Err(_) => Input::Invalid(format!("expected a cell number or `quit`, got `{t}`")),
    }
}

fn record(arena: &mut Arena, cell: usize, transcript: &mut Vec<Ply>) -> Result<u32> {
    let player = arena.current_player();
    let canonical = arena.board().canonical_move(&arena.position()?, cell)?;
    let delta = arena.play(cell)?;
    transcript.push(Ply { player, cell: cell + 1, canonical, delta });
    Ok(delta)
}

/// Runs one game. End of input counts as `quit`.
pub fn run<R: BufRead, W: Write>(
    spec: &GameSpec,
    human: Player,
    engine: &AnyStrategy,
    reference: Option<(String, i64)>,
    mut input: R,
    out: &mut W,
) -> Result<Session> {
    let mut arena = Arena::from_spec(spec)?;
    let mut state: AnyState = engine.initial_state(&arena);
    let mut transcript = Vec::new();
    let mut last_human = None;
    writeln!(out, "{} - you play {human}, the engine plays {}", spec.origin, engine.id())?;
    let finished = loop {
        if arena.is_over() {
            break true;
        }
        writeln!(out, "\n{}\nscore {}, {} to move", arena.board().render(), arena.score(), arena.current_player())?;
        if arena.current_player() == human {
            write!(out, "cell> ")?;
            out.flush()?;
            let mut line = String::new();
            if input.read_line(&mut line)? == 0 {
                writeln!(out)?;
                break false;
            }
            match read_input(&line, &arena) {
                Input::Quit => break false,
                Input::Invalid(msg) => writeln!(out, "{msg}")?,
                Input::Cell(c) => {
                    record(&mut arena, c, &mut transcript)?;
                    last_human = Some(c);
                }
            }
        } else {
            let (c, next) = engine.choose(&arena, last_human.take(), &state)?;
            state = next;
            if !arena.is_empty_cell(c) {
                anyhow::bail!("engine {} chose taken cell {}", engine.id(), c + 1);
            }
            record(&mut arena, c, &mut transcript)?;
            writeln!(out, "engine claims cell {}", c + 1)?;
        }
    };
    if finished {
        writeln!(out, "\n{}\ngame over: score {}", arena.board().render(), arena.score())?;
        if let Some((label, value)) = reference {
            writeln!(out, "{label} = {value}")?;
        }
    } else {
        writeln!(out, "stopped at score {}", arena.score())?;
    }
    writeln!(out, "transcript:")?;
    for (i, p) in transcript.iter().enumerate() {
        writeln!(out, "  {:>3}. {:<7} cell {:>3} (+{})", i + 1, p.player.to_string(), p.cell, p.delta)?;
    }
    Ok(Session { transcript, score: arena.score(), finished })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn play(spec: &GameSpec, engine: &str, input: &str) -> (Session, String) {
        let engine = AnyStrategy::from_id(engine, Some(1)).unwrap();
        let mut out = Vec::new();
        let s = run(spec, Player::Maker, &engine, None, input.as_bytes(), &mut out).unwrap();
        (s, String::from_utf8(out).unwrap())
    }

    #[test]
    fn human_maker_against_optimal_breaker() {
        let spec = GameSpec::path(7).unwrap();
        // Breaker opens; the human always takes the lowest free cell by
        // trying every cell in order, with taken cells re-prompting.
        let input: String = (0..10).flat_map(|_| (1..=7).map(|c| format!("{c}\n"))).collect();
        let (s, text) = play(&spec, "optimal", &input);
        assert!(s.finished);
        assert!(s.score <= 2);
        assert!(text.contains("is taken"));
    }

    #[test]
    fn quit_keeps_the_transcript() {
        let spec = GameSpec::cycle(8).unwrap();
        let (s, text) = play(&spec, "greedy-breaker", "3\nquit\n");
        assert!(!s.finished);
        assert_eq!(s.transcript.len(), 2);
        assert!(text.contains("transcript:"));
    }

    #[test]
    fn bad_input_leaves_state_alone() {
        let spec = GameSpec::cycle(8).unwrap();
        let (s, text) = play(&spec, "greedy-breaker", "x\n99\n");
        assert!(s.transcript.is_empty());
        assert!(text.contains("expected a cell number"));
        assert!(text.contains("off the board"));
    }
}
