//! Component algebra for the vertex-claiming game on paths and cycles.
//!
//! A residual board is a disjoint union of runs of unclaimed cells. Each run
//! is summarised by its length and by how many of its two ends touch a
//! Maker-owned cell:
//!
//! * `F(n)`: neither end is Maker-flanked.
//! * `G(n)`: exactly one end is Maker-flanked. The flanked end is always
//!   local cell 1; runs flanked on the right are mirrored when created.
//! * `H(n)`: both ends are Maker-flanked.
//!
//! Cells inside a component are numbered `1..=len`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};

use crate::error::BoardError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ComponentKind {
    F,
    G,
    H,
}

impl ComponentKind {
    pub const ALL: [ComponentKind; 3] = [ComponentKind::F, ComponentKind::G, ComponentKind::H];

    pub fn letter(self) -> char {
        match self {
            ComponentKind::F => 'F',
            ComponentKind::G => 'G',
            ComponentKind::H => 'H',
        }
    }

    /// Number of Maker-flanked ends.
    pub fn flanked_ends(self) -> u32 {
        match self {
            ComponentKind::F => 0,
            ComponentKind::G => 1,
            ComponentKind::H => 2,
        }
    }

    fn from_flanks(left: bool, right: bool) -> Self {
        match (left, right) {
            (false, false) => ComponentKind::F,
            (true, true) => ComponentKind::H,
            _ => ComponentKind::G,
        }
    }

    /// Kinds that read the same from either end.
    pub fn is_symmetric(self) -> bool {
        self != ComponentKind::G
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Player {
    Maker,
    Breaker,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Maker => Player::Breaker,
            Player::Breaker => Player::Maker,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Maker => f.write_str("Maker"),
            Player::Breaker => f.write_str("Breaker"),
        }
    }
}

impl FromStr for Player {
    type Err = BoardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "maker" | "m" => Ok(Player::Maker),
            "breaker" | "b" => Ok(Player::Breaker),
            other => Err(BoardError::Parse(format!("unknown player `{other}`"))),
        }
    }
}

/// One maximal run of unclaimed cells.
///
/// Ordering is `(kind, len)`, which is the canonical order inside a
/// [`Position`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Component {
    kind: ComponentKind,
    len: u32,
}

impl Component {
    pub fn new(kind: ComponentKind, len: u32) -> Result<Self, BoardError> {
        if len == 0 {
            return Err(BoardError::EmptyComponent);
        }
        Ok(Component { kind, len })
    }

    /// Builds a component, returning `None` for zero length.
    pub fn non_empty(kind: ComponentKind, len: u32) -> Option<Self> {
        (len > 0).then_some(Component { kind, len })
    }

    pub fn f(len: u32) -> Self {
        Self::new(ComponentKind::F, len).expect("F component needs len >= 1")
    }

    pub fn g(len: u32) -> Self {
        Self::new(ComponentKind::G, len).expect("G component needs len >= 1")
    }

    pub fn h(len: u32) -> Self {
        Self::new(ComponentKind::H, len).expect("H component needs len >= 1")
    }

    pub fn kind(&self) -> ComponentKind {
        self.kind
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    /// Always false; zero-length components cannot be constructed.
    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.len)
    }
}

impl FromStr for Component {
    type Err = BoardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('F') => ComponentKind::F,
            Some('G') => ComponentKind::G,
            Some('H') => ComponentKind::H,
            _ => return Err(BoardError::Parse(format!("bad component token `{s}`"))),
        };
        let len: u32 = chars
            .as_str()
            .trim()
            .parse()
            .map_err(|_| BoardError::Parse(format!("bad component length in `{s}`")))?;
        Component::new(kind, len)
    }
}

/// The parts left behind by a single claim. At most two.
pub type Parts = ArrayVec<Component, 2>;

fn check_cell(len: u32, j: u32) -> Result<(), BoardError> {
    if len == 0 {
        return Err(BoardError::EmptyComponent);
    }
    if j == 0 || j > len {
        return Err(BoardError::CellOutOfRange { cell: j, len });
    }
    Ok(())
}

fn push_part(parts: &mut Parts, kind: ComponentKind, len: u32) {
    if let Some(c) = Component::non_empty(kind, len) {
        parts.push(c);
    }
}

/// Maker claims local cell `j`. Returns the score gained and the residual parts
/// (left part first).
pub fn split_maker(kind: ComponentKind, len: u32, j: u32) -> Result<(u32, Parts), BoardError> {
    check_cell(len, j)?;
    let (left, right) = (j - 1, len - j);
    let mut parts = Parts::new();
    let delta = match kind {
        ComponentKind::F => {
            push_part(&mut parts, ComponentKind::G, left);
            push_part(&mut parts, ComponentKind::G, right);
            0
        }
        ComponentKind::G => {
            push_part(&mut parts, ComponentKind::H, left);
            push_part(&mut parts, ComponentKind::G, right);
            u32::from(j == 1)
        }
        ComponentKind::H => {
            push_part(&mut parts, ComponentKind::H, left);
            push_part(&mut parts, ComponentKind::H, right);
            u32::from(j == 1) + u32::from(j == len)
        }
    };
    Ok((delta, parts))
}

/// Breaker claims local cell `j`. The score never changes.
pub fn split_breaker(kind: ComponentKind, len: u32, j: u32) -> Result<Parts, BoardError> {
    check_cell(len, j)?;
    let (left, right) = (j - 1, len - j);
    let mut parts = Parts::new();
    match kind {
        ComponentKind::F => {
            push_part(&mut parts, ComponentKind::F, left);
            push_part(&mut parts, ComponentKind::F, right);
        }
        ComponentKind::G => {
            push_part(&mut parts, ComponentKind::G, left);
            push_part(&mut parts, ComponentKind::F, right);
        }
        ComponentKind::H => {
            push_part(&mut parts, ComponentKind::G, left);
            push_part(&mut parts, ComponentKind::G, right);
        }
    }
    Ok(parts)
}

/// Splits for either player.
pub fn split(player: Player, kind: ComponentKind, len: u32, j: u32) -> Result<(u32, Parts), BoardError> {
    match player {
        Player::Maker => split_maker(kind, len, j),
        Player::Breaker => split_breaker(kind, len, j).map(|p| (0, p)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Move {
    /// Index into the canonical component order of the position.
    pub component_index: usize,
    /// Local cell, `1..=len`.
    pub cell: u32,
}

impl Move {
    pub fn new(component_index: usize, cell: u32) -> Self {
        Move { component_index, cell }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}@{}", self.component_index, self.cell)
    }
}

/// Canonical residual game state: a sorted multiset of components plus the
/// player to move.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Position {
    components: Vec<Component>,
    to_move: Player,
}

impl Position {
    pub fn new(mut components: Vec<Component>, to_move: Player) -> Self {
        components.sort_unstable();
        Position { components, to_move }
    }

    pub fn empty(to_move: Player) -> Self {
        Position { components: Vec::new(), to_move }
    }

    /// Parses a comma separated list such as `"F3,G1,H2"` (case-insensitive).
    pub fn parse(s: &str, to_move: Player) -> Result<Self, BoardError> {
        Ok(Position::new(parse_components(s)?, to_move))
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn with_to_move(&self, to_move: Player) -> Position {
        Position { components: self.components.clone(), to_move }
    }

    pub fn is_terminal(&self) -> bool {
        self.components.is_empty()
    }

    /// Number of unclaimed cells.
    pub fn total_len(&self) -> u32 {
        self.components.iter().map(|c| c.len).sum()
    }

    /// All legal moves, canonical component order then ascending cell.
    pub fn legal_moves(&self) -> Vec<Move> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(i, c)| (1..=c.len).map(move |cell| Move::new(i, cell)))
            .collect()
    }

    pub fn is_legal(&self, m: Move) -> bool {
        self.components
            .get(m.component_index)
            .is_some_and(|c| m.cell >= 1 && m.cell <= c.len)
    }

    /// Plays `m` for the player to move. Returns the successor and the score
    /// gained by the move.
    pub fn apply_move(&self, m: Move) -> Result<(Position, u32), BoardError> {
        if self.is_terminal() {
            return Err(BoardError::TerminalPosition);
        }
        let comp = *self
            .components
            .get(m.component_index)
            .ok_or(BoardError::ComponentOutOfRange {
                index: m.component_index,
                count: self.components.len(),
            })?;
        let (delta, parts) = split(self.to_move, comp.kind, comp.len, m.cell)?;
        Ok((self.replaced(m.component_index, &parts, self.to_move.opponent()), delta))
    }

    /// Copy of the multiset with component `index` swapped for `parts`.
    pub(crate) fn replaced(&self, index: usize, parts: &[Component], to_move: Player) -> Position {
        let mut components = Vec::with_capacity(self.components.len() + 1);
        components.extend_from_slice(&self.components[..index]);
        components.extend_from_slice(&self.components[index + 1..]);
        for &p in parts {
            let at = components.partition_point(|c| c.cmp(&p) != Ordering::Greater);
            components.insert(at, p);
        }
        Position { components, to_move }
    }

    /// Index of some component equal to `c`.
    pub fn index_of(&self, c: Component) -> Option<usize> {
        self.components.binary_search(&c).ok()
    }

    /// The same position with one more component.
    pub fn with_component(&self, c: Component) -> Position {
        let mut components = self.components.clone();
        let at = components.partition_point(|x| *x <= c);
        components.insert(at, c);
        Position { components, to_move: self.to_move }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}} {} to move", self.to_move)
    }
}

pub fn parse_components(s: &str) -> Result<Vec<Component>, BoardError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

/// Where a game came from. Kept for reporting; the solver only needs the
/// position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Origin {
    Cycle(u32),
    Path(u32),
    DelayedF { n: u32, k: u32 },
    RawPosition,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Cycle(n) => write!(f, "cycle:{n}"),
            Origin::Path(n) => write!(f, "path:{n}"),
            Origin::DelayedF { n, k } => write!(f, "delayed:{n}:{k}"),
            Origin::RawPosition => f.write_str("pos"),
        }
    }
}

/// A game to be solved or played: a starting position and the number of
/// free Breaker claims made before alternation starts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameSpec {
    pub origin: Origin,
    pub position: Position,
    pub pending_free_breaker_moves: u32,
}

impl GameSpec {
    /// Toucher-Isolator on `C_n`. Breaker's opening claim is absorbed by
    /// symmetry, leaving `F(n-1)` with Maker to move.
    pub fn cycle(n: u32) -> Result<Self, BoardError> {
        if n < 3 {
            return Err(BoardError::InvalidGame(format!("cycle needs n >= 3, got {n}")));
        }
        Ok(GameSpec {
            origin: Origin::Cycle(n),
            position: Position::new(vec![Component::f(n - 1)], Player::Maker),
            pending_free_breaker_moves: 0,
        })
    }

    /// Toucher-Isolator on `P_n`: `H(n)` with Breaker to move.
    pub fn path(n: u32) -> Result<Self, BoardError> {
        if n < 1 {
            return Err(BoardError::InvalidGame("path needs n >= 1".into()));
        }
        Ok(GameSpec {
            origin: Origin::Path(n),
            position: Position::new(vec![Component::h(n)], Player::Breaker),
            pending_free_breaker_moves: 0,
        })
    }

    /// `F(n)` where Breaker first claims `k` cells, then Maker starts.
    pub fn delayed(n: u32, k: u32) -> Result<Self, BoardError> {
        if n < 1 || k > n {
            return Err(BoardError::InvalidGame(format!(
                "delayed game needs n >= 1 and 0 <= k <= n, got n={n}, k={k}"
            )));
        }
        Ok(GameSpec {
            origin: Origin::DelayedF { n, k },
            position: Position::new(vec![Component::f(n)], Player::Maker),
            pending_free_breaker_moves: k,
        })
    }

    pub fn raw(position: Position) -> Self {
        GameSpec { origin: Origin::RawPosition, position, pending_free_breaker_moves: 0 }
    }

    /// The player who makes the first claim.
    pub fn first_player(&self) -> Player {
        if self.pending_free_breaker_moves > 0 {
            Player::Breaker
        } else {
            self.position.to_move()
        }
    }
}

pub fn game_from_cycle(n: u32) -> Result<GameSpec, BoardError> {
    GameSpec::cycle(n)
}

pub fn game_from_path(n: u32) -> Result<GameSpec, BoardError> {
    GameSpec::path(n)
}

/// Census of a position used by the upper-bound function `g = y + z`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCounts {
    /// F components with length congruent to 3 or 4 mod 5.
    pub n1: u32,
    /// G components with length congruent to 0 or 1 mod 5.
    pub n2: u32,
    /// H components with length congruent to 2 or 3 mod 5, excluding H(2).
    pub n3: u32,
    /// Number of H(2).
    pub n4: u32,
    /// Number of H(1).
    pub n5: u32,
    /// Parity of `n5`.
    pub epsilon: u32,
    pub y: i64,
    pub z: i64,
    /// `z` computed through the rewritten form `-N4 - floor((N1+N2+N3-eps)/2)`.
    pub z_alt: i64,
    pub g: i64,
}

impl StructureCounts {
    pub fn z_forms_agree(&self) -> bool {
        self.z == self.z_alt
    }
}

/// Floor of `a / 5` for non-negative arguments as `i64`.
fn floor5(a: u32) -> i64 {
    i64::from(a) / 5
}

pub fn structure_counts(components: &[Component]) -> StructureCounts {
    let mut c = StructureCounts::default();
    let mut y = 0i64;
    for comp in components {
        let len = comp.len;
        let r = len % 5;
        match comp.kind {
            ComponentKind::F => {
                y += floor5(len + 2);
                if r == 3 || r == 4 {
                    c.n1 += 1;
                }
            }
            ComponentKind::G => {
                y += floor5(len + 5);
                if r == 0 || r == 1 {
                    c.n2 += 1;
                }
            }
            ComponentKind::H => {
                y += floor5(len + 8);
                if len == 2 {
                    c.n4 += 1;
                } else if r == 2 || r == 3 {
                    c.n3 += 1;
                }
                if len == 1 {
                    c.n5 += 1;
                }
            }
        }
    }
    c.epsilon = c.n5 % 2;
    let extra = i64::from(c.n1 + c.n2 + c.n3);
    let eps = i64::from(c.epsilon);
    let n4 = i64::from(c.n4);
    c.y = y;
    c.z = -n4 + eps - (extra + eps).div_euclid(2);
    c.z_alt = -n4 - (extra - eps).div_euclid(2);
    c.g = c.y + c.z;
    c
}

impl Position {
    pub fn structure_counts(&self) -> StructureCounts {
        structure_counts(&self.components)
    }
}

/// Closed-form values for a board size `n` and delay `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaValues {
    /// Untouched vertices on the cycle, `floor((n+1)/5)`.
    pub u_cycle: u32,
    /// Untouched vertices on the path, `floor((n+4)/5)`, and 0 for `n = 1`.
    pub u_path: u32,
    /// Guaranteed Maker score in `F(n, k)`: `max(0, floor((n-3k+2)/5))`.
    pub alpha_lower: u32,
    /// Lower bound for Breaker-first `H(n)`; equals `u_path`.
    pub gamma_b_lower: u32,
    /// Exact value of `F(n)`: `floor((n+2)/5)`.
    pub alpha_exact: u32,
}

#[allow(clippy::manual_div_ceil)]
pub fn formula_values(n: u32, k: u32) -> FormulaValues {
    let u_path = if n <= 1 { 0 } else { (n + 4) / 5 };
    let lower = (i64::from(n) - 3 * i64::from(k) + 2).div_euclid(5).max(0);
    FormulaValues {
        u_cycle: (n + 1) / 5,
        u_path,
        alpha_lower: lower as u32,
        gamma_b_lower: u_path,
        alpha_exact: (n + 2) / 5,
    }
}

/// Kind of the run `lo..=hi` given which neighbours are Maker-owned.
pub(crate) fn kind_for_flanks(left: bool, right: bool) -> ComponentKind {
    ComponentKind::from_flanks(left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ComponentKind::*;

    fn parts(v: &[Component]) -> Parts {
        v.iter().copied().collect()
    }

    #[test]
    fn maker_split_examples() {
        assert_eq!(split_maker(H, 1, 1).unwrap(), (2, parts(&[])));
        assert_eq!(split_maker(F, 1, 1).unwrap(), (0, parts(&[])));
        assert_eq!(split_maker(F, 7, 3).unwrap(), (0, parts(&[Component::g(2), Component::g(4)])));
        assert_eq!(split_maker(G, 5, 1).unwrap(), (1, parts(&[Component::g(4)])));
        assert_eq!(split_maker(H, 4, 4).unwrap(), (1, parts(&[Component::h(3)])));
        assert_eq!(split_maker(G, 5, 5).unwrap(), (0, parts(&[Component::h(4)])));
    }

    #[test]
    fn breaker_split_examples() {
        assert_eq!(split_breaker(H, 5, 2).unwrap(), parts(&[Component::g(1), Component::g(3)]));
        assert_eq!(split_breaker(H, 5, 3).unwrap(), parts(&[Component::g(2), Component::g(2)]));
        assert_eq!(split_breaker(F, 2, 1).unwrap(), parts(&[Component::f(1)]));
        assert_eq!(split_breaker(G, 4, 2).unwrap(), parts(&[Component::g(1), Component::f(2)]));
    }

    #[test]
    fn out_of_range_cells_are_rejected() {
        assert!(matches!(split_maker(F, 3, 0), Err(BoardError::CellOutOfRange { .. })));
        assert!(matches!(split_breaker(H, 3, 4), Err(BoardError::CellOutOfRange { .. })));
        assert!(Component::new(F, 0).is_err());
    }

    #[test]
    fn apply_move_examples() {
        let p = Position::new(vec![Component::h(1)], Player::Maker);
        assert_eq!(p.apply_move(Move::new(0, 1)).unwrap(), (Position::empty(Player::Breaker), 2));

        let p = Position::new(vec![Component::f(3)], Player::Breaker);
        let (q, d) = p.apply_move(Move::new(0, 2)).unwrap();
        assert_eq!(d, 0);
        assert_eq!(q, Position::new(vec![Component::f(1), Component::f(1)], Player::Maker));

        let p = Position::new(vec![Component::h(2)], Player::Maker);
        let (q, d) = p.apply_move(Move::new(0, 1)).unwrap();
        assert_eq!((q, d), (Position::new(vec![Component::h(1)], Player::Breaker), 1));
    }

    #[test]
    fn illegal_moves_leave_position_alone() {
        let p = Position::new(vec![Component::f(2)], Player::Maker);
        assert!(p.apply_move(Move::new(1, 1)).is_err());
        assert!(p.apply_move(Move::new(0, 3)).is_err());
        assert!(Position::empty(Player::Maker).apply_move(Move::new(0, 1)).is_err());
        assert_eq!(p, Position::new(vec![Component::f(2)], Player::Maker));
    }

    #[test]
    fn legal_move_listing() {
        assert!(Position::empty(Player::Maker).legal_moves().is_empty());
        let p = Position::new(vec![Component::f(2)], Player::Maker);
        assert_eq!(p.legal_moves(), vec![Move::new(0, 1), Move::new(0, 2)]);
        let p = Position::new(vec![Component::g(1), Component::f(1)], Player::Breaker);
        assert_eq!(p.legal_moves().len(), 2);
    }

    #[test]
    fn game_constructors() {
        let c = GameSpec::cycle(5).unwrap();
        assert_eq!(c.position, Position::new(vec![Component::f(4)], Player::Maker));
        assert_eq!(GameSpec::cycle(3).unwrap().position.components(), &[Component::f(2)]);
        assert_eq!(GameSpec::cycle(10).unwrap().position.components(), &[Component::f(9)]);
        assert!(GameSpec::cycle(2).is_err());

        let p = GameSpec::path(1).unwrap();
        assert_eq!(p.position, Position::new(vec![Component::h(1)], Player::Breaker));
        assert_eq!(GameSpec::path(7).unwrap().position.components(), &[Component::h(7)]);
        assert!(GameSpec::path(0).is_err());

        assert!(GameSpec::delayed(3, 4).is_err());
        let d = GameSpec::delayed(5, 2).unwrap();
        assert_eq!(d.first_player(), Player::Breaker);
    }

    #[test]
    fn structure_count_examples() {
        let s = structure_counts(&[Component::h(1)]);
        assert_eq!((s.n5, s.epsilon, s.y, s.z, s.g), (1, 1, 1, 1, 2));
        let s = structure_counts(&[Component::h(2)]);
        assert_eq!((s.n4, s.y, s.z, s.g), (1, 2, -1, 1));
        let s = structure_counts(&[Component::f(8)]);
        assert_eq!((s.n1, s.y, s.z, s.g), (1, 2, 0, 2));
        let s = structure_counts(&[]);
        assert_eq!(s, StructureCounts::default());
    }

    #[test]
    fn z_alt_uses_floor_division_for_negative_numerator() {
        // N1 = N2 = N3 = 0 with a single H(1): (0 - 1) / 2 floors to -1.
        let s = structure_counts(&[Component::h(1), Component::f(1)]);
        assert_eq!(s.z_alt, 1);
        assert!(s.z_forms_agree());
    }

    #[test]
    fn formula_examples() {
        assert_eq!(formula_values(9, 0).u_cycle, 2);
        assert_eq!(formula_values(1, 0).u_path, 0);
        assert_eq!(formula_values(5, 1).alpha_lower, 0);
        assert_eq!(formula_values(2, 0).u_path, 1);
        assert_eq!(formula_values(3, 5).alpha_lower, 0);
        assert_eq!(formula_values(9, 0).alpha_exact, 2);
    }

    #[test]
    fn parse_and_display() {
        let p = Position::parse("h2, f3,G1", Player::Maker).unwrap();
        assert_eq!(p.components(), &[Component::f(3), Component::g(1), Component::h(2)]);
        assert_eq!(p.to_string(), "{F3,G1,H2} Maker to move");
        assert!(Position::parse("X3", Player::Maker).is_err());
        assert!(Position::parse("F0", Player::Maker).is_err());
        assert!(Position::parse("", Player::Maker).unwrap().is_terminal());
    }
}
