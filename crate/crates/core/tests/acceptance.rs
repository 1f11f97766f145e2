//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use isolator_core::harness::{random_position, run_suite, table_rows, VerifyConfig};
use isolator_core::strategies::{Lemma3Maker, Lemma4Maker, Lemma5Breaker};
use isolator_core::{best_response_value, formula_values, Budget, GameSpec, Player, Position, Solver};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn cycle_exactness(s: &mut Solver) -> Check {
    for n in 3..=21 {
        let v = s.solve_cycle(n).map_err(|e| e.to_string())?.value;
        let want = (n + 1) / 5;
        if v != want {
            return Err(format!("n = {n}: solver {v}, formula {want}"));
        }
    }
    Ok("u(C_n) = floor((n+1)/5) for 3 <= n <= 21".into())
}

fn path_exactness(s: &mut Solver) -> Check {
    let v1 = s.solve_path(1).map_err(|e| e.to_string())?.value;
    if v1 != 0 {
        return Err(format!("n = 1: solver {v1}, expected 0"));
    }
    for n in 2..=21 {
        let v = s.solve_path(n).map_err(|e| e.to_string())?.value;
        let want = n.div_ceil(5);
        if v != want {
            return Err(format!("n = {n}: solver {v}, formula {want}"));
        }
    }
    Ok("u(P_n) = floor((n+4)/5) for 2 <= n <= 21, u(P_1) = 0".into())
}

fn oracle_equivalence(s: &mut Solver) -> Check {
    let cfg = VerifyConfig { oracle_f_max: 12, oracle_h_max: 10, ..VerifyConfig::default() };
    let r = run_suite("oracle-equivalence", &cfg, s).map_err(|e| e.to_string())?;
    if r.passed {
        Ok(format!("{} ({})", r.detail, r.scale))
    } else {
        Err(r.detail)
    }
}

fn lemma3_bound(s: &mut Solver) -> Check {
    for n in 1..=18 {
        for k in 0..=3.min(n) {
            let v = s.solve_delayed(n, k).map_err(|e| e.to_string())?.value;
            let lower = (i64::from(n) - 3 * i64::from(k) + 2).div_euclid(5).max(0) as u32;
            if v < lower {
                return Err(format!("F({n},{k}) = {v} < {lower}"));
            }
            if k == 0 && v != (n + 2) / 5 {
                return Err(format!("F({n},0) = {v} != {}", (n + 2) / 5));
            }
        }
    }
    Ok("F(n,k) >= floor((n-3k+2)/5) for n <= 18, k <= 3; equality at k = 0".into())
}

fn lemma5_bound(s: &mut Solver) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let count = 600;
    for _ in 0..count {
        let p = random_position(&mut rng, 14, Player::Maker);
        let c = p.structure_counts();
        if c.z != c.z_alt {
            return Err(format!("{p}: z forms differ ({} vs {})", c.z, c.z_alt));
        }
        let v = s.value(&p).map_err(|e| e.to_string())?;
        if i64::from(v) > c.g {
            return Err(format!("{p}: value {v} > g = {}", c.g));
        }
    }
    Ok(format!("{count} seeded positions of total length <= 14 satisfy value <= g, z forms agree"))
}

fn sandwich(s: &mut Solver) -> Check {
    let budget = Budget::default();
    let err = |e: isolator_core::SolveError| e.to_string();
    for n in 3..=16 {
        let cycle = GameSpec::cycle(n).map_err(|e| e.to_string())?;
        let path = GameSpec::path(n).map_err(|e| e.to_string())?;
        let f = formula_values(n, 0);
        let cases = [
            ("cycle", &cycle, f.u_cycle, best_response_value(&cycle, &Lemma3Maker, Player::Maker, budget).map_err(err)?),
            ("path", &path, f.u_path, best_response_value(&path, &Lemma4Maker, Player::Maker, budget).map_err(err)?),
        ];
        for (name, spec, formula, maker) in cases {
            let breaker = best_response_value(spec, &Lemma5Breaker, Player::Breaker, budget).map_err(err)?;
            let solved = s.solve_spec(spec).map_err(err)?.value;
            if breaker > formula || maker < formula || breaker != solved || maker != solved {
                return Err(format!(
                    "{name} {n}: breaker strategy {breaker}, maker strategy {maker}, formula {formula}, solver {solved}"
                ));
            }
        }
    }
    Ok("Breaker and Maker strategy bounds meet the solver value on cycles and paths, 3 <= n <= 16".into())
}

fn special_values(s: &mut Solver) -> Check {
    for (pos, want) in [("H1", 2), ("H2", 1), ("F2", 0)] {
        let p = Position::parse(pos, Player::Maker).map_err(|e| e.to_string())?;
        let v = s.value(&p).map_err(|e| e.to_string())?;
        if v != want {
            return Err(format!("{pos}: {v}, expected {want}"));
        }
    }
    Ok("H1 = 2, H2 = 1, F2 = 0 with Maker to move".into())
}

fn asymptotic_ratio(_: &mut Solver) -> Check {
    let rows = table_rows(50, 100, None).map_err(|e| e.to_string())?;
    let mut seen = Vec::new();
    for r in rows.iter().filter(|r| r.n == 50 || r.n == 100) {
        let ratio = r.cycle_ratio.ok_or("missing ratio")?;
        if (ratio - 0.2).abs() > 0.01 {
            return Err(format!("n = {}: ratio {ratio}", r.n));
        }
        seen.push(format!("n = {}: {ratio}", r.n));
    }
    if seen.len() != 2 {
        return Err("rows for n = 50 and 100 missing".into());
    }
    Ok(format!("u(C_n)/n within 0.01 of 1/5 ({})", seen.join(", ")))
}

type Criterion = fn(&mut Solver) -> Check;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 8] = [
        ("cycle exactness", cycle_exactness),
        ("path exactness", path_exactness),
        ("oracle equivalence", oracle_equivalence),
        ("delayed lower bound", lemma3_bound),
        ("structure upper bound", lemma5_bound),
        ("strategy sandwich", sandwich),
        ("special values", special_values),
        ("asymptotic proportion", asymptotic_ratio),
    ];
    let mut solver = Solver::new();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = check(&mut solver);
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
