//! Named verification suites with adjustable scales.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::board::{formula_values, Component, ComponentKind, GameSpec, Player, Position};
use crate::error::SolveError;
use crate::explicit::{Cell, ExplicitBoard, Topology};
use crate::oracle::BruteForce;
use crate::solver::{Budget, Solver};
use crate::strategies::{
    best_response_value, breaker_first_response, check_table_row, CorruptedBreaker, Lemma3Maker, Lemma4Maker,
    Lemma5Breaker, Strategy,
};

pub const SUITES: [&str; 11] = [
    "cycle-exact",
    "path-exact",
    "oracle-equivalence",
    "delayed-bound",
    "lemma5-random-positions",
    "special-values",
    "breaker-table",
    "lemma5-breaker-guarantee",
    "lemma3-maker-guarantee",
    "lemma4-maker-guarantee",
    "sandwich",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub exact_n_max: u32,
    pub oracle_f_max: u32,
    pub oracle_h_max: u32,
    pub oracle_cap: usize,
    pub delayed_n_max: u32,
    pub delayed_k_max: u32,
    pub lemma5_random_positions: u32,
    pub lemma5_total_max: u32,
    pub seed: u64,
    pub table_len_max: u32,
    pub breaker_f_max: u32,
    pub breaker_h_max: u32,
    pub lemma3_n_max: u32,
    pub lemma3_k_max: u32,
    pub lemma4_n_max: u32,
    pub sandwich_n_max: u32,
    pub budget: Budget,
    /// Swaps the reply-table Breaker for a broken one, to check that the
    /// suites notice.
    pub corrupt_breaker: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            exact_n_max: 21,
            oracle_f_max: 12,
            oracle_h_max: 10,
            oracle_cap: crate::oracle::DEFAULT_ORACLE_CAP,
            delayed_n_max: 18,
            delayed_k_max: 3,
            lemma5_random_positions: 500,
            lemma5_total_max: 14,
            seed: 7,
            table_len_max: 100,
            breaker_f_max: 20,
            breaker_h_max: 18,
            lemma3_n_max: 18,
            lemma3_k_max: 2,
            lemma4_n_max: 18,
            sandwich_n_max: 16,
            budget: Budget::default(),
            corrupt_breaker: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub scale: String,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<(String, Result<String, String>), SolveError>;

/// A random position of total length between 1 and `total_max`.
pub fn random_position(rng: &mut impl Rng, total_max: u32, to_move: Player) -> Position {
    let total = rng.gen_range(1..=total_max.max(1));
    let mut left = total;
    let mut comps = Vec::new();
    while left > 0 {
        let len = rng.gen_range(1..=left);
        let kind = ComponentKind::ALL[rng.gen_range(0..3)];
        comps.push(Component::non_empty(kind, len).expect("len >= 1"));
        left -= len;
    }
    Position::new(comps, to_move)
}

fn breaker_guarantee<S: Strategy>(s: &S, cfg: &VerifyConfig) -> Outcome {
    for n in 1..=cfg.breaker_f_max {
        let v = best_response_value(&GameSpec::delayed(n, 0)?, s, Player::Breaker, cfg.budget)?;
        let bound = formula_values(n, 0).alpha_exact;
        if v > bound {
            return Ok((String::new(), Err(format!("F{n}: Maker reaches {v} > {bound}"))));
        }
    }
    for n in 1..=cfg.breaker_h_max {
        let spec = GameSpec::raw(Position::new(vec![Component::h(n)], Player::Maker));
        let g = spec.position.structure_counts().g;
        let v = best_response_value(&spec, s, Player::Breaker, cfg.budget)?;
        if i64::from(v) > g {
            return Ok((String::new(), Err(format!("H{n}: Maker reaches {v} > g = {g}"))));
        }
    }
    Ok((String::new(), Ok("all bounds hold".into())))
}

fn sandwich<S: Strategy>(breaker: &S, cfg: &VerifyConfig, solver: &mut Solver) -> Outcome {
    for n in 3..=cfg.sandwich_n_max {
        let f = formula_values(n, 0);
        let cycle = GameSpec::cycle(n)?;
        let path = GameSpec::path(n)?;
        let rows = [
            ("cycle", f.u_cycle, &cycle, best_response_value(&cycle, &Lemma3Maker, Player::Maker, cfg.budget)?),
            ("path", f.u_path, &path, best_response_value(&path, &Lemma4Maker, Player::Maker, cfg.budget)?),
        ];
        for (name, formula, spec, maker_side) in rows {
            let breaker_side = best_response_value(spec, breaker, Player::Breaker, cfg.budget)?;
            let solved = solver.solve_spec(spec)?.value;
            if !(maker_side >= formula && breaker_side <= formula && maker_side == solved && breaker_side == solved) {
                return Ok((
                    String::new(),
                    Err(format!(
                        "{name} {n}: maker strategy {maker_side}, breaker strategy {breaker_side}, solver {solved}, formula {formula}"
                    )),
                ));
            }
        }
    }
    Ok((String::new(), Ok("maker bound = breaker bound = solver value".into())))
}

/// Every board reachable from an empty path of `n` cells, compared cell
/// state by cell state with the brute-force oracle.
fn oracle_sweep(n: u32, flanks: (bool, bool), first: Player, cap: usize, solver: &mut Solver) -> Result<Result<u64, String>, SolveError> {
    let size = n as usize;
    let mut bf = BruteForce::new(size, Topology::Path, flanks, cap)?;
    let mut cells = vec![Cell::Empty; size];
    let mut checked = 0u64;
    loop {
        let makers = cells.iter().filter(|c| **c == Cell::Maker).count();
        let breakers = cells.iter().filter(|c| **c == Cell::Breaker).count();
        let (firsts, seconds) = if first == Player::Maker { (makers, breakers) } else { (breakers, makers) };
        if firsts == seconds || firsts == seconds + 1 {
            let to_move = if firsts == seconds { first } else { first.opponent() };
            let board = ExplicitBoard::from_cells(Topology::Path, cells.clone(), flanks)?;
            let want = bf.value(&board, to_move)?;
            let got = board.maker_pairs() + solver.value(&board.to_position(to_move)?)?;
            if want != got {
                return Ok(Err(format!("{board} ({to_move} to move): oracle {want}, solver {got}")));
            }
            checked += 1;
        }
        // next assignment in base 3
        let mut i = 0;
        loop {
            if i == size {
                return Ok(Ok(checked));
            }
            cells[i] = match cells[i] {
                Cell::Empty => Cell::Maker,
                Cell::Maker => Cell::Breaker,
                Cell::Breaker => Cell::Empty,
            };
            if cells[i] != Cell::Empty {
                break;
            }
            i += 1;
        }
    }
}

fn run(name: &str, cfg: &VerifyConfig, solver: &mut Solver) -> Outcome {
    let fail = |scale: String, msg: String| Ok((scale, Err(msg)));
    match name {
        "cycle-exact" => {
            let scale = format!("3 <= n <= {}", cfg.exact_n_max);
            for n in 3..=cfg.exact_n_max {
                let v = solver.solve_cycle(n)?.value;
                if v != formula_values(n, 0).u_cycle {
                    return fail(scale, format!("n = {n}: solver {v}"));
                }
            }
            Ok((scale, Ok("solver = floor((n+1)/5)".into())))
        }
        "path-exact" => {
            let scale = format!("1 <= n <= {}", cfg.exact_n_max);
            for n in 1..=cfg.exact_n_max {
                let v = solver.solve_path(n)?.value;
                if v != formula_values(n, 0).u_path {
                    return fail(scale, format!("n = {n}: solver {v}"));
                }
            }
            Ok((scale, Ok("solver = floor((n+4)/5), and 0 at n = 1".into())))
        }
        "oracle-equivalence" => {
            let scale = format!("F(n) n <= {}, Breaker-first H(n) n <= {}", cfg.oracle_f_max, cfg.oracle_h_max);
            let mut total = 0;
            for n in 1..=cfg.oracle_f_max {
                match oracle_sweep(n, (false, false), Player::Maker, cfg.oracle_cap, solver)? {
                    Ok(c) => total += c,
                    Err(e) => return fail(scale, e),
                }
            }
            for n in 1..=cfg.oracle_h_max {
                match oracle_sweep(n, (true, true), Player::Breaker, cfg.oracle_cap, solver)? {
                    Ok(c) => total += c,
                    Err(e) => return fail(scale, e),
                }
            }
            Ok((scale, Ok(format!("{total} reachable boards agree"))))
        }
        "delayed-bound" => {
            let scale = format!("n <= {}, k <= {}", cfg.delayed_n_max, cfg.delayed_k_max);
            for n in 1..=cfg.delayed_n_max {
                for k in 0..=cfg.delayed_k_max.min(n) {
                    let v = solver.solve_delayed(n, k)?.value;
                    let f = formula_values(n, k);
                    if v < f.alpha_lower || (k == 0 && v != f.alpha_exact) {
                        return fail(scale, format!("F({n},{k}) = {v}, bound {}", f.alpha_lower));
                    }
                }
            }
            Ok((scale, Ok("F(n,k) >= floor((n-3k+2)/5), equality at k = 0".into())))
        }
        "lemma5-random-positions" => {
            let scale = format!(
                "{} positions, total length <= {}, seed {}",
                cfg.lemma5_random_positions, cfg.lemma5_total_max, cfg.seed
            );
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for _ in 0..cfg.lemma5_random_positions {
                let p = random_position(&mut rng, cfg.lemma5_total_max, Player::Maker);
                let counts = p.structure_counts();
                if !counts.z_forms_agree() {
                    return fail(scale, format!("{p}: z = {}, rewritten z = {}", counts.z, counts.z_alt));
                }
                let v = solver.value(&p)?;
                if i64::from(v) > counts.g {
                    return fail(scale, format!("{p}: value {v} > g = {}", counts.g));
                }
                let spec = GameSpec::raw(p.clone());
                let held = if cfg.corrupt_breaker {
                    best_response_value(&spec, &CorruptedBreaker, Player::Breaker, cfg.budget)?
                } else {
                    best_response_value(&spec, &Lemma5Breaker, Player::Breaker, cfg.budget)?
                };
                if i64::from(held) > counts.g {
                    return fail(scale, format!("{p}: Maker reaches {held} against the breaker strategy, g = {}", counts.g));
                }
            }
            Ok((scale, Ok("value <= g, breaker strategy holds g, both z forms agree".into())))
        }
        "special-values" => {
            let scale = "H1, H2, F2".to_string();
            for (s, want) in [("H1", 2), ("H2", 1), ("F2", 0)] {
                let v = solver.value(&Position::parse(s, Player::Maker)?)?;
                if v != want {
                    return fail(scale, format!("{s}: {v}, expected {want}"));
                }
            }
            Ok((scale, Ok("H1 = 2, H2 = 1, F2 = 0".into())))
        }
        "breaker-table" => {
            let scale = format!("len <= {}", cfg.table_len_max);
            let mut rows = 0;
            for len in 1..=cfg.table_len_max {
                for kind in ComponentKind::ALL {
                    for j in 1..=len {
                        match breaker_first_response(kind, len, j) {
                            Some(r) if r == j || r == 0 || r > len => {
                                return fail(scale, format!("{}{len} j={j}: reply {r}", kind.letter()))
                            }
                            None if len > 1 => return fail(scale, format!("{}{len} j={j}: no reply", kind.letter())),
                            _ => {}
                        }
                        match check_table_row(kind, len, j) {
                            Ok(true) => rows += 1,
                            Ok(false) => {}
                            Err(e) => return fail(scale, e),
                        }
                    }
                }
            }
            Ok((scale, Ok(format!("{rows} general rows hold"))))
        }
        "lemma5-breaker-guarantee" => {
            let scale = format!("F(n) n <= {}, H(n) n <= {}", cfg.breaker_f_max, cfg.breaker_h_max);
            let (_, r) = if cfg.corrupt_breaker {
                breaker_guarantee(&CorruptedBreaker, cfg)?
            } else {
                breaker_guarantee(&Lemma5Breaker, cfg)?
            };
            Ok((scale, r))
        }
        "lemma3-maker-guarantee" => {
            let scale = format!("F(n,k) n <= {}, k <= {}", cfg.lemma3_n_max, cfg.lemma3_k_max);
            for n in 1..=cfg.lemma3_n_max {
                for k in 0..=cfg.lemma3_k_max.min(n) {
                    let v = best_response_value(&GameSpec::delayed(n, k)?, &Lemma3Maker, Player::Maker, cfg.budget)?;
                    let bound = formula_values(n, k).alpha_lower;
                    if v < bound {
                        return fail(scale, format!("F({n},{k}): Breaker holds Maker to {v} < {bound}"));
                    }
                }
            }
            Ok((scale, Ok("all bounds hold".into())))
        }
        "lemma4-maker-guarantee" => {
            let scale = format!("2 <= n <= {}", cfg.lemma4_n_max);
            for n in 2..=cfg.lemma4_n_max {
                let v = best_response_value(&GameSpec::path(n)?, &Lemma4Maker, Player::Maker, cfg.budget)?;
                let bound = formula_values(n, 0).u_path;
                if v < bound {
                    return fail(scale, format!("path {n}: Breaker holds Maker to {v} < {bound}"));
                }
            }
            Ok((scale, Ok("all bounds hold".into())))
        }
        "sandwich" => {
            let scale = format!("3 <= n <= {}", cfg.sandwich_n_max);
            let (_, r) = if cfg.corrupt_breaker {
                sandwich(&CorruptedBreaker, cfg, solver)?
            } else {
                sandwich(&Lemma5Breaker, cfg, solver)?
            };
            Ok((scale, r))
        }
        other => Err(SolveError::Board(crate::error::BoardError::Parse(format!("unknown suite `{other}`")))),
    }
}

/// Runs one suite. Budget exhaustion and other errors propagate.
pub fn run_suite(name: &str, cfg: &VerifyConfig, solver: &mut Solver) -> Result<SuiteReport, SolveError> {
    let (scale, result) = run(name, cfg, solver)?;
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Ok(SuiteReport { name: name.into(), scale, passed, detail })
}

/// Runs every suite in [`SUITES`] order.
pub fn verify_all(cfg: &VerifyConfig, solver: &mut Solver) -> Result<Vec<SuiteReport>, SolveError> {
    SUITES.iter().map(|s| run_suite(s, cfg, solver)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            exact_n_max: 12,
            oracle_f_max: 7,
            oracle_h_max: 6,
            delayed_n_max: 10,
            lemma5_random_positions: 50,
            lemma5_total_max: 10,
            table_len_max: 30,
            breaker_f_max: 10,
            breaker_h_max: 8,
            lemma3_n_max: 9,
            lemma4_n_max: 9,
            sandwich_n_max: 9,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn small_scales_pass() {
        let mut s = Solver::new();
        for r in verify_all(&small(), &mut s).unwrap() {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn corrupted_breaker_is_named() {
        let cfg = VerifyConfig { corrupt_breaker: true, ..small() };
        let r = run_suite("lemma5-breaker-guarantee", &cfg, &mut Solver::new()).unwrap();
        assert!(!r.passed);
        assert_eq!(r.name, "lemma5-breaker-guarantee");
        assert!(!run_suite("sandwich", &cfg, &mut Solver::new()).unwrap().passed);
    }

    #[test]
    fn random_positions_are_seeded() {
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20).map(|_| random_position(&mut rng, 14, Player::Maker)).collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert!(draw(7).iter().all(|p| (1..=14).contains(&p.total_len())));
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run_suite("nope", &small(), &mut Solver::new()).is_err());
    }
}
