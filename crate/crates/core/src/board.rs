//! Stones, squares and the rules of movement.
//!
//! A [`Configuration`] is a sparse map from grid cells to stone colors laid
//! over an infinite checkerboard. The checkerboard coloring is fixed by a
//! single parity bit: a cell `(row, col)` is a black square exactly when
//! `(row + col) % 2 == parity_anchor`. With the default anchor of 0 the
//! origin is black, so [`checkerboard`] and [`psi_line`] produce all-matching
//! configurations with a black stone in the top-left corner.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Stone (and square) color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    /// Single-letter glyph used by the board and plan file formats.
    pub fn glyph(self) -> char {
        match self {
            Color::White => 'W',
            Color::Black => 'B',
        }
    }

    pub fn from_glyph(c: char) -> Option<Color> {
        match c {
            'W' => Some(Color::White),
            'B' => Some(Color::Black),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::White => f.write_str("White"),
            Color::Black => f.write_str("Black"),
        }
    }
}

/// A grid cell. Rows grow downward, columns grow rightward.
///
/// The derived ordering is row-major, which is the move-generation order
/// used everywhere in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord {
    pub row: i32,
    pub col: i32,
}

impl Coord {
    pub const fn new(row: i32, col: i32) -> Self {
        Coord { row, col }
    }

    /// Orthogonal neighbors in row-major order (up, left, right, down).
    pub fn neighbors(self) -> [Coord; 4] {
        [
            Coord::new(self.row - 1, self.col),
            Coord::new(self.row, self.col - 1),
            Coord::new(self.row, self.col + 1),
            Coord::new(self.row + 1, self.col),
        ]
    }

    pub fn is_adjacent(self, other: Coord) -> bool {
        (self.row - other.row).abs() + (self.col - other.col).abs() == 1
    }

    pub fn offset(self, dr: i32, dc: i32) -> Coord {
        Coord::new(self.row + dr, self.col + dc)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// One clobbering step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub mover: Color,
    pub from: Coord,
    pub to: Coord,
}

impl Move {
    pub const fn new(mover: Color, from: Coord, to: Coord) -> Self {
        Move { mover, from, to }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {}",
            self.mover.glyph(),
            self.from.row,
            self.from.col,
            self.to.row,
            self.to.col
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoardError {
    #[error("illegal move {mv}: {reason}")]
    IllegalMove { mv: Move, reason: &'static str },
    #[error("invalid board size {rows}x{cols}")]
    InvalidSize { rows: i64, cols: i64 },
}

/// Square color of `c` under the given anchor bit.
pub fn square_color(c: Coord, parity_anchor: u8) -> Color {
    if (c.row + c.col).rem_euclid(2) as u8 == parity_anchor & 1 {
        Color::Black
    } else {
        Color::White
    }
}

/// A set of stones on the checkerboard.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Configuration {
    stones: BTreeMap<Coord, Color>,
    parity_anchor: u8,
}

impl Configuration {
    pub fn new(parity_anchor: u8) -> Self {
        Configuration {
            stones: BTreeMap::new(),
            parity_anchor: parity_anchor & 1,
        }
    }

    pub fn from_stones<I>(parity_anchor: u8, stones: I) -> Self
    where
        I: IntoIterator<Item = (Coord, Color)>,
    {
        Configuration {
            stones: stones.into_iter().collect(),
            parity_anchor: parity_anchor & 1,
        }
    }

    pub fn parity_anchor(&self) -> u8 {
        self.parity_anchor
    }

    pub fn len(&self) -> usize {
        self.stones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stones.is_empty()
    }

    pub fn get(&self, c: Coord) -> Option<Color> {
        self.stones.get(&c).copied()
    }

    pub fn insert(&mut self, c: Coord, color: Color) -> Option<Color> {
        self.stones.insert(c, color)
    }

    pub fn remove(&mut self, c: Coord) -> Option<Color> {
        self.stones.remove(&c)
    }

    /// Stones in row-major order.
    pub fn stones(&self) -> impl Iterator<Item = (Coord, Color)> + '_ {
        self.stones.iter().map(|(&c, &col)| (c, col))
    }

    pub fn count(&self, color: Color) -> usize {
        self.stones.values().filter(|&&c| c == color).count()
    }

    pub fn square_color(&self, c: Coord) -> Color {
        square_color(c, self.parity_anchor)
    }

    /// `None` for an empty cell.
    pub fn is_matching(&self, c: Coord) -> Option<bool> {
        self.get(c).map(|color| color == self.square_color(c))
    }

    pub fn clashing_count(&self) -> usize {
        self.stones
            .iter()
            .filter(|(&c, &color)| color != self.square_color(c))
            .count()
    }

    /// Number of stones plus number of clashing stones.
    pub fn delta(&self) -> usize {
        self.len() + self.clashing_count()
    }

    pub fn delta_class(&self) -> usize {
        self.delta() % 3
    }

    /// Inclusive bounding box `(min, max)`, or `None` when empty.
    pub fn bounding_box(&self) -> Option<(Coord, Coord)> {
        let mut it = self.stones.keys();
        let first = *it.next()?;
        let (mut lo, mut hi) = (first, first);
        for c in it {
            lo.row = lo.row.min(c.row);
            lo.col = lo.col.min(c.col);
            hi.row = hi.row.max(c.row);
            hi.col = hi.col.max(c.col);
        }
        Some((lo, hi))
    }

    /// All legal moves for `mover`, ordered row-major by source then target.
    pub fn legal_moves(&self, mover: Color) -> Vec<Move> {
        let mut out = Vec::new();
        for (&from, &color) in &self.stones {
            if color != mover {
                continue;
            }
            for to in from.neighbors() {
                if self.get(to) == Some(mover.opposite()) {
                    out.push(Move::new(mover, from, to));
                }
            }
        }
        out
    }

    /// Legal moves of both colors in row-major order.
    pub fn all_legal_moves(&self) -> Vec<Move> {
        let mut out = Vec::new();
        for (&from, &color) in &self.stones {
            for to in from.neighbors() {
                if self.get(to) == Some(color.opposite()) {
                    out.push(Move::new(color, from, to));
                }
            }
        }
        out
    }

    pub fn check_move(&self, m: &Move) -> Result<(), BoardError> {
        let illegal = |reason| Err(BoardError::IllegalMove { mv: *m, reason });
        if !m.from.is_adjacent(m.to) {
            return illegal("cells are not orthogonally adjacent");
        }
        match self.get(m.from) {
            None => return illegal("source cell is empty"),
            Some(c) if c != m.mover => return illegal("source stone has the wrong color"),
            _ => {}
        }
        match self.get(m.to) {
            None => illegal("target cell is empty"),
            Some(c) if c == m.mover => illegal("target stone has the mover's color"),
            _ => Ok(()),
        }
    }

    /// Applies `m` in place.
    pub fn play(&mut self, m: &Move) -> Result<(), BoardError> {
        self.check_move(m)?;
        self.stones.remove(&m.from);
        self.stones.insert(m.to, m.mover);
        Ok(())
    }

    pub fn apply_move(&self, m: &Move) -> Result<Configuration, BoardError> {
        let mut next = self.clone();
        next.play(m)?;
        Ok(next)
    }

    /// Orthogonal-adjacency components, each in row-major order of its first
    /// stone.
    pub fn connected_components(&self) -> Vec<Configuration> {
        let mut seen: BTreeSet<Coord> = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.stones.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = Configuration::new(self.parity_anchor);
            let mut stack = vec![start];
            while let Some(c) = stack.pop() {
                comp.insert(c, self.stones[&c]);
                for n in c.neighbors() {
                    if self.stones.contains_key(&n) && seen.insert(n) {
                        stack.push(n);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Shifts every stone by `(dr, dc)`. Square colors move with the stones:
    /// the anchor is flipped when the shift has odd parity.
    pub fn translated(&self, dr: i32, dc: i32) -> Configuration {
        let flip = ((dr + dc).rem_euclid(2)) as u8;
        Configuration {
            stones: self
                .stones
                .iter()
                .map(|(c, &color)| (c.offset(dr, dc), color))
                .collect(),
            parity_anchor: self.parity_anchor ^ flip,
        }
    }

    /// Translation with min row = min col = 0, preserving which stones are
    /// matching.
    pub fn canonical(&self) -> Configuration {
        match self.bounding_box() {
            Some((lo, _)) => self.translated(-lo.row, -lo.col),
            None => Configuration::new(self.parity_anchor),
        }
    }

    /// Mirror across the main diagonal. Square colors are unchanged.
    pub fn transposed(&self) -> Configuration {
        Configuration {
            stones: self
                .stones
                .iter()
                .map(|(c, &color)| (Coord::new(c.col, c.row), color))
                .collect(),
            parity_anchor: self.parity_anchor,
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some((lo, hi)) = self.bounding_box() else {
            return Ok(());
        };
        for r in lo.row..=hi.row {
            for c in lo.col..=hi.col {
                let g = self.get(Coord::new(r, c)).map_or('.', Color::glyph);
                write!(f, "{g}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `rows x cols` all-matching rectangle with the top-left stone black.
pub fn checkerboard(rows: i64, cols: i64) -> Result<Configuration, BoardError> {
    if rows <= 0 || cols <= 0 || rows > i32::MAX as i64 || cols > i32::MAX as i64 {
        return Err(BoardError::InvalidSize { rows, cols });
    }
    let mut cfg = Configuration::new(0);
    for r in 0..rows as i32 {
        for c in 0..cols as i32 {
            let at = Coord::new(r, c);
            cfg.insert(at, square_color(at, 0));
        }
    }
    Ok(cfg)
}

/// The one-row checkerboard line of length `n`, starting with black.
pub fn psi_line(n: i64) -> Result<Configuration, BoardError> {
    checkerboard(1, n).map_err(|_| BoardError::InvalidSize { rows: 1, cols: n })
}
