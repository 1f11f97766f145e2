//! Python bindings: positions, the exact solver, closed forms, strategy
//! playouts and the verification suites.

use std::time::Duration;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use isolator_core::harness::{self, MatchRecord, TableRow, VerifyConfig};
use isolator_core::{
    best_response_value, AnyStrategy, BoardError, Budget, CacheError, ComponentKind, GameSpec, Move, Player,
    SolveError, SolveResult,
};

create_exception!(isolator, BudgetExhausted, PyException);

fn board_err(e: BoardError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn solve_err(e: SolveError) -> PyErr {
    match e {
        SolveError::Board(b) => board_err(b),
        e @ SolveError::BudgetExhausted { .. } => BudgetExhausted::new_err(e.to_string()),
        e => PyRuntimeError::new_err(e.to_string()),
    }
}

fn cache_err(e: CacheError) -> PyErr {
    match e {
        CacheError::Io { .. } => pyo3::exceptions::PyOSError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn player(s: &str) -> PyResult<Player> {
    s.parse().map_err(board_err)
}

fn kind(s: &str) -> PyResult<ComponentKind> {
    match s.trim().to_ascii_uppercase().as_str() {
        "F" => Ok(ComponentKind::F),
        "G" => Ok(ComponentKind::G),
        "H" => Ok(ComponentKind::H),
        other => Err(PyValueError::new_err(format!("unknown component kind `{other}`"))),
    }
}

fn budget(max_nodes: Option<u64>, max_seconds: Option<f64>) -> PyResult<Budget> {
    let d = Budget::default();
    let time = match max_seconds {
        Some(s) if s.is_finite() && s > 0.0 => Duration::from_secs_f64(s),
        Some(s) => return Err(PyValueError::new_err(format!("max_seconds must be positive, got {s}"))),
        None => d.max_time,
    };
    Ok(Budget::new(max_nodes.unwrap_or(d.max_nodes), time))
}

/// A multiset of F, G and H components with a player to move.
#[pyclass(module = "isolator", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Position {
    inner: isolator_core::Position,
}

#[pymethods]
impl Position {
    #[new]
    #[pyo3(signature = (components, to_move = "maker"))]
    fn new(components: &str, to_move: &str) -> PyResult<Self> {
        let inner = isolator_core::Position::parse(components, player(to_move)?).map_err(board_err)?;
        Ok(Position { inner })
    }

    #[getter]
    fn components(&self) -> Vec<String> {
        self.inner.components().iter().map(|c| c.to_string()).collect()
    }

    #[getter]
    fn to_move(&self) -> String {
        self.inner.to_move().to_string()
    }

    #[getter]
    fn total_len(&self) -> u32 {
        self.inner.total_len()
    }

    fn is_terminal(&self) -> bool {
        self.inner.is_terminal()
    }

    /// `(component_index, cell)` pairs, cells 1-based.
    fn legal_moves(&self) -> Vec<(usize, u32)> {
        self.inner.legal_moves().into_iter().map(|m| (m.component_index, m.cell)).collect()
    }

    /// The position after the move and the score it makes.
    fn apply_move(&self, component_index: usize, cell: u32) -> PyResult<(Position, u32)> {
        let (p, delta) = self.inner.apply_move(Move::new(component_index, cell)).map_err(board_err)?;
        Ok((Position { inner: p }, delta))
    }

    fn structure_counts<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        counts_dict(py, &self.inner.structure_counts())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        let comps = self.components().join(",");
        format!("Position('{comps}', '{}')", self.to_move().to_lowercase())
    }
}

fn counts_dict<'py>(py: Python<'py>, c: &isolator_core::StructureCounts) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("n1", c.n1)?;
    d.set_item("n2", c.n2)?;
    d.set_item("n3", c.n3)?;
    d.set_item("n4", c.n4)?;
    d.set_item("n5", c.n5)?;
    d.set_item("epsilon", c.epsilon)?;
    d.set_item("y", c.y)?;
    d.set_item("z", c.z)?;
    d.set_item("z_alt", c.z_alt)?;
    d.set_item("g", c.g)?;
    Ok(d)
}

fn result_dict<'py>(py: Python<'py>, r: &SolveResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("value", r.value)?;
    d.set_item("principal_move", r.principal_move.map(|m| (m.component_index, m.cell)))?;
    d.set_item("nodes_expanded", r.nodes_expanded)?;
    Ok(d)
}

/// A game to solve or play: a starting position plus free Breaker claims.
#[pyclass(module = "isolator", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Game {
    inner: GameSpec,
}

#[pymethods]
impl Game {
    #[staticmethod]
    fn cycle(n: u32) -> PyResult<Self> {
        Ok(Game { inner: GameSpec::cycle(n).map_err(board_err)? })
    }

    #[staticmethod]
    fn path(n: u32) -> PyResult<Self> {
        Ok(Game { inner: GameSpec::path(n).map_err(board_err)? })
    }

    #[staticmethod]
    fn delayed(n: u32, k: u32) -> PyResult<Self> {
        Ok(Game { inner: GameSpec::delayed(n, k).map_err(board_err)? })
    }

    #[staticmethod]
    fn position(position: PyRef<'_, Position>) -> Self {
        Game { inner: GameSpec::raw(position.inner.clone()) }
    }

    #[getter]
    fn start(&self) -> Position {
        Position { inner: self.inner.position.clone() }
    }

    #[getter]
    fn pending_free_breaker_moves(&self) -> u32 {
        self.inner.pending_free_breaker_moves
    }

    fn __repr__(&self) -> String {
        format!("Game({}: {})", self.inner.origin, self.inner.position)
    }
}

/// Exact solver with a transposition table kept between calls.
#[pyclass(module = "isolator")]
struct Solver {
    inner: isolator_core::Solver,
}

#[pymethods]
impl Solver {
    #[new]
    #[pyo3(signature = (max_nodes = None, max_seconds = None))]
    fn new(max_nodes: Option<u64>, max_seconds: Option<f64>) -> PyResult<Self> {
        Ok(Solver { inner: isolator_core::Solver::with_budget(budget(max_nodes, max_seconds)?) })
    }

    fn solve<'py>(&mut self, py: Python<'py>, position: PyRef<'_, Position>) -> PyResult<Bound<'py, PyDict>> {
        let r = self.inner.solve(&position.inner).map_err(solve_err)?;
        result_dict(py, &r)
    }

    fn solve_game<'py>(&mut self, py: Python<'py>, game: PyRef<'_, Game>) -> PyResult<Bound<'py, PyDict>> {
        let r = self.inner.solve_spec(&game.inner).map_err(solve_err)?;
        result_dict(py, &r)
    }

    fn solve_cycle(&mut self, n: u32) -> PyResult<u32> {
        Ok(self.inner.solve_cycle(n).map_err(solve_err)?.value)
    }

    fn solve_path(&mut self, n: u32) -> PyResult<u32> {
        Ok(self.inner.solve_path(n).map_err(solve_err)?.value)
    }

    fn solve_delayed(&mut self, n: u32, k: u32) -> PyResult<u32> {
        Ok(self.inner.solve_delayed(n, k).map_err(solve_err)?.value)
    }

    fn save_cache(&self, path: std::path::PathBuf) -> PyResult<()> {
        self.inner.save_cache(path).map_err(cache_err)
    }

    /// Merges a saved table; returns the number of entries read.
    fn load_cache(&mut self, path: std::path::PathBuf) -> PyResult<usize> {
        self.inner.load_cache(path).map_err(cache_err)
    }

    fn __len__(&self) -> usize {
        self.inner.memo_len()
    }
}

#[pyfunction]
#[pyo3(signature = (n, k = 0))]
fn formula_values<'py>(py: Python<'py>, n: u32, k: u32) -> PyResult<Bound<'py, PyDict>> {
    let f = isolator_core::formula_values(n, k);
    let d = PyDict::new(py);
    d.set_item("u_cycle", f.u_cycle)?;
    d.set_item("u_path", f.u_path)?;
    d.set_item("alpha_lower", f.alpha_lower)?;
    d.set_item("gamma_b_lower", f.gamma_b_lower)?;
    d.set_item("alpha_exact", f.alpha_exact)?;
    Ok(d)
}

#[pyfunction]
fn structure_counts<'py>(py: Python<'py>, components: &str) -> PyResult<Bound<'py, PyDict>> {
    let comps = isolator_core::board::parse_components(components).map_err(board_err)?;
    counts_dict(py, &isolator_core::structure_counts(&comps))
}

/// Breaker's reply to Maker claiming local cell `j` of a fresh component.
#[pyfunction]
fn breaker_first_response(kind_letter: &str, length: u32, j: u32) -> PyResult<Option<u32>> {
    Ok(isolator_core::breaker_first_response(kind(kind_letter)?, length, j))
}

#[pyfunction]
fn strategy_ids() -> Vec<&'static str> {
    AnyStrategy::IDS.to_vec()
}

fn strategy(id: &str, seed: Option<u64>) -> PyResult<AnyStrategy> {
    AnyStrategy::from_id(id, seed).map_err(board_err)
}

/// Final score when `strategy` plays `side` and the opponent answers
/// optimally against it.
#[pyfunction]
#[pyo3(signature = (game, strategy_id, side, seed = None, max_nodes = None, max_seconds = None))]
fn best_response(
    py: Python<'_>,
    game: PyRef<'_, Game>,
    strategy_id: &str,
    side: &str,
    seed: Option<u64>,
    max_nodes: Option<u64>,
    max_seconds: Option<f64>,
) -> PyResult<u32> {
    let s = strategy(strategy_id, seed)?;
    let side = player(side)?;
    let b = budget(max_nodes, max_seconds)?;
    let spec = game.inner.clone();
    py.detach(|| best_response_value(&spec, &s, side, b)).map_err(solve_err)
}

fn match_dict<'py>(py: Python<'py>, rec: &MatchRecord) -> PyResult<Bound<'py, PyDict>> {
    let plies = PyList::empty(py);
    for p in &rec.transcript {
        let d = PyDict::new(py);
        d.set_item("player", p.player.to_string())?;
        d.set_item("cell", p.cell)?;
        d.set_item("canonical", (p.canonical.component_index, p.canonical.cell))?;
        d.set_item("delta", p.delta)?;
        plies.append(d)?;
    }
    let refs = PyDict::new(py);
    for r in &rec.references {
        refs.set_item(&r.label, r.value)?;
    }
    let d = PyDict::new(py);
    d.set_item("game", &rec.spec)?;
    d.set_item("maker", &rec.maker)?;
    d.set_item("breaker", &rec.breaker)?;
    d.set_item("transcript", plies)?;
    d.set_item("final_score", rec.final_score)?;
    d.set_item("references", refs)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (game, maker, breaker, seed = None))]
fn play_match<'py>(
    py: Python<'py>,
    game: PyRef<'_, Game>,
    maker: &str,
    breaker: &str,
    seed: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let (m, b) = (strategy(maker, seed)?, strategy(breaker, seed)?);
    let spec = game.inner.clone();
    let rec = py.detach(|| harness::play_match(&spec, &m, &b)).map_err(solve_err)?;
    match_dict(py, &rec)
}

fn row_dict<'py>(py: Python<'py>, r: &TableRow) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("u_cycle_solver", r.u_cycle_solver)?;
    d.set_item("u_cycle_formula", r.u_cycle_formula)?;
    d.set_item("u_path_solver", r.u_path_solver)?;
    d.set_item("u_path_formula", r.u_path_formula)?;
    d.set_item("prior_lower", r.prior_lower)?;
    d.set_item("prior_upper", r.prior_upper)?;
    d.set_item("cycle_ratio", r.cycle_ratio)?;
    d.set_item("cycle_match", r.cycle_match)?;
    d.set_item("path_match", r.path_match)?;
    Ok(d)
}

/// Rows for `n_from..=n_to`; solver columns are left as `None` when
/// `formula_only` is set.
#[pyfunction]
#[pyo3(signature = (n_from, n_to, formula_only = false))]
fn table<'py>(py: Python<'py>, n_from: u32, n_to: u32, formula_only: bool) -> PyResult<Bound<'py, PyList>> {
    let rows = py
        .detach(|| {
            let mut solver = isolator_core::Solver::new();
            harness::table_rows(n_from, n_to, (!formula_only).then_some(&mut solver))
        })
        .map_err(solve_err)?;
    let out = PyList::empty(py);
    for r in &rows {
        out.append(row_dict(py, r)?)?;
    }
    Ok(out)
}

#[pyfunction]
fn suite_names() -> Vec<&'static str> {
    harness::SUITES.to_vec()
}

/// Runs the named suites (all of them by default) at their default scales.
/// Returns `(name, passed, detail)` triples.
#[pyfunction]
#[pyo3(signature = (suites = None))]
fn verify(py: Python<'_>, suites: Option<Vec<String>>) -> PyResult<Vec<(String, bool, String)>> {
    let names: Vec<String> = suites.unwrap_or_else(|| harness::SUITES.iter().map(|s| s.to_string()).collect());
    let reports = py
        .detach(|| {
            let cfg = VerifyConfig::default();
            let mut solver = isolator_core::Solver::with_budget(cfg.budget);
            names.iter().map(|n| harness::run_suite(n, &cfg, &mut solver)).collect::<Result<Vec<_>, _>>()
        })
        .map_err(solve_err)?;
    Ok(reports.into_iter().map(|r| (r.name, r.passed, r.detail)).collect())
}

#[pymodule]
fn isolator(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BudgetExhausted", m.py().get_type::<BudgetExhausted>())?;
    m.add_class::<Position>()?;
    m.add_class::<Game>()?;
    m.add_class::<Solver>()?;
    m.add_function(wrap_pyfunction!(formula_values, m)?)?;
    m.add_function(wrap_pyfunction!(structure_counts, m)?)?;
    m.add_function(wrap_pyfunction!(breaker_first_response, m)?)?;
    m.add_function(wrap_pyfunction!(strategy_ids, m)?)?;
    m.add_function(wrap_pyfunction!(best_response, m)?)?;
    m.add_function(wrap_pyfunction!(play_match, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
