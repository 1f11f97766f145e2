//! Value tables, verification suites and strategy matches, shared by the
//! command-line tool and the Python bindings.

mod matches;
mod verify;

pub use matches::{play_match, replay, FormulaReference, MatchRecord, Ply};
pub use verify::{random_position, run_suite, verify_all, SuiteReport, VerifyConfig, SUITES};

use serde::{Deserialize, Serialize};

use crate::board::formula_values;
use crate::error::SolveError;
use crate::solver::Solver;

/// Bumped whenever the columns of [`TableRow`] change.
pub const TABLE_SCHEMA_VERSION: u32 = 1;

/// One line of the value table. Solver columns are empty when the table is
/// built from the closed forms only, and cycle columns are empty below
/// `n = 3`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u32,
    pub u_cycle_solver: Option<u32>,
    pub u_cycle_formula: Option<u32>,
    pub u_path_solver: Option<u32>,
    pub u_path_formula: u32,
    /// Earlier bounds `3(n-3)/16 <= u(C_n) <= n/4`.
    pub prior_lower: f64,
    pub prior_upper: f64,
    /// `u(C_n) / n` from the closed form.
    pub cycle_ratio: Option<f64>,
    pub cycle_match: Option<bool>,
    pub path_match: Option<bool>,
}

pub fn table_row(n: u32, solver: Option<&mut Solver>) -> Result<TableRow, SolveError> {
    let f = formula_values(n, 0);
    let cycle_formula = (n >= 3).then_some(f.u_cycle);
    let (cycle_solver, path_solver) = match solver {
        Some(s) => {
            let c = if n >= 3 { Some(s.solve_cycle(n)?.value) } else { None };
            (c, Some(s.solve_path(n)?.value))
        }
        None => (None, None),
    };
    Ok(TableRow {
        n,
        u_cycle_solver: cycle_solver,
        u_cycle_formula: cycle_formula,
        u_path_solver: path_solver,
        u_path_formula: f.u_path,
        prior_lower: 3.0 * (f64::from(n) - 3.0) / 16.0,
        prior_upper: f64::from(n) / 4.0,
        cycle_ratio: cycle_formula.map(|u| f64::from(u) / f64::from(n)),
        cycle_match: cycle_solver.zip(cycle_formula).map(|(a, b)| a == b),
        path_match: path_solver.map(|v| v == f.u_path),
    })
}

/// Rows for `n_from..=n_to`. With `solver = None` only the closed forms are
/// filled in.
pub fn table_rows(n_from: u32, n_to: u32, mut solver: Option<&mut Solver>) -> Result<Vec<TableRow>, SolveError> {
    if n_from == 0 || n_from > n_to {
        return Err(SolveError::Board(crate::error::BoardError::InvalidGame(format!(
            "empty range {n_from}..={n_to}"
        ))));
    }
    (n_from..=n_to).map(|n| table_row(n, solver.as_deref_mut())).collect()
}
