//! Exact minimizer for arbitrary configurations.
//!
//! Stones only ever move onto occupied cells, so every reachable position is
//! a subset of the initial cells with some recoloring. A search state is
//! therefore two bitmasks over the initial cells (occupied, white) plus the
//! color to move. The search is a depth-first branch and bound over a shared
//! transposition table; a node stops expanding once it reaches its lower
//! bound. Every table entry records the exact minimum and the first move (in
//! row-major order) that achieves it, so the witness does not depend on how
//! many workers filled the table.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use rayon::prelude::*;
use thiserror::Error;

use crate::board::{Color, Configuration, Coord, Move};
use crate::plan::Plan;

/// Default maximum stone count accepted by the exact search.
pub const DEFAULT_LIMIT: usize = 16;
/// Largest stone count the bitmask representation supports.
pub const MAX_LIMIT: usize = 64;

/// Move-order discipline for the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    AlternatingWhiteFirst,
    AlternatingBlackFirst,
    AlternatingEither,
    FreeOrder,
}

impl Mode {
    pub const ALL: [Mode; 4] = [
        Mode::AlternatingWhiteFirst,
        Mode::AlternatingBlackFirst,
        Mode::AlternatingEither,
        Mode::FreeOrder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::AlternatingWhiteFirst => "wfirst",
            Mode::AlternatingBlackFirst => "bfirst",
            Mode::AlternatingEither => "either",
            Mode::FreeOrder => "free",
        }
    }

    pub fn from_name(s: &str) -> Option<Mode> {
        Mode::ALL.into_iter().find(|m| m.name() == s)
    }

    pub fn is_alternating(self) -> bool {
        self != Mode::FreeOrder
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("configuration has no stones")]
    EmptyConfiguration,
    #[error("{stones} stones exceed the exact-search limit of {limit}")]
    LimitExceeded { stones: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest stone count to search (at most [`MAX_LIMIT`]).
    pub limit: usize,
    /// Worker threads; 1 searches on the calling thread.
    pub jobs: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            limit: DEFAULT_LIMIT,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub memo_entries: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub min_stones: usize,
    pub witness: Plan,
    pub stats: SearchStats,
}

/// Lower bound on the stones any move sequence can leave.
///
/// The maximum of the component count, the single-stone exclusion for
/// delta class 0, and the size of any one-colored component.
pub fn lower_bound(cfg: &Configuration) -> Result<usize, SolverError> {
    if cfg.is_empty() {
        return Err(SolverError::EmptyConfiguration);
    }
    let comps = cfg.connected_components();
    let delta_bound = if cfg.delta_class() == 0 { 2 } else { 1 };
    let mono = comps
        .iter()
        .filter(|c| c.count(Color::White) == 0 || c.count(Color::Black) == 0)
        .map(Configuration::len)
        .max()
        .unwrap_or(0);
    Ok(comps.len().max(delta_bound).max(mono))
}

pub fn min_stones(cfg: &Configuration, mode: Mode) -> Result<Solution, SolverError> {
    Solver::default().min_stones(cfg, mode)
}

pub fn is_one_reducible(cfg: &Configuration) -> Result<(bool, Option<Plan>), SolverError> {
    Solver::default().is_one_reducible(cfg)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Solver {
    pub config: SolverConfig,
}

impl Solver {
    pub fn new(config: SolverConfig) -> Self {
        Solver { config }
    }

    fn check_limit(&self, cfg: &Configuration) -> Result<(), SolverError> {
        let limit = self.config.limit.min(MAX_LIMIT);
        if cfg.len() > limit {
            return Err(SolverError::LimitExceeded {
                stones: cfg.len(),
                limit,
            });
        }
        Ok(())
    }

    pub fn min_stones(&self, cfg: &Configuration, mode: Mode) -> Result<Solution, SolverError> {
        self.check_limit(cfg)?;
        let search = Search::new(cfg, self.config.jobs);
        let start = search.start_state();
        let (turn, value) = match mode {
            Mode::AlternatingWhiteFirst => (Turn::White, search.root(start, Turn::White)),
            Mode::AlternatingBlackFirst => (Turn::Black, search.root(start, Turn::Black)),
            Mode::FreeOrder => (Turn::Free, search.root(start, Turn::Free)),
            Mode::AlternatingEither => {
                let w = search.root(start, Turn::White);
                let b = search.root(start, Turn::Black);
                if b < w {
                    (Turn::Black, b)
                } else {
                    (Turn::White, w)
                }
            }
        };
        let moves = search.witness(start, turn);
        let first = match turn {
            Turn::Black => Color::Black,
            Turn::White => Color::White,
            Turn::Free => moves.first().map_or(Color::White, |m| m.mover),
        };
        let witness = Plan {
            first_mover: first,
            moves,
            metadata: format!("exact-solver mode={mode} stones={}", cfg.len()),
        };
        Ok(Solution {
            min_stones: value as usize,
            witness,
            stats: search.stats(),
        })
    }

    /// Decides whether `cfg` can be reduced to one stone by alternating
    /// moves (either color first).
    pub fn is_one_reducible(
        &self,
        cfg: &Configuration,
    ) -> Result<(bool, Option<Plan>), SolverError> {
        if cfg.len() == 1 {
            let first = cfg.stones().next().map_or(Color::White, |(_, c)| c);
            return Ok((true, Some(Plan::new(first, "single stone"))));
        }
        if cfg.is_empty() || cfg.delta_class() == 0 {
            return Ok((false, None));
        }
        let sol = self.min_stones(cfg, Mode::AlternatingEither)?;
        if sol.min_stones == 1 {
            Ok((true, Some(sol.witness)))
        } else {
            Ok((false, None))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Turn {
    White,
    Black,
    Free,
}

impl Turn {
    fn next(self) -> Turn {
        match self {
            Turn::White => Turn::Black,
            Turn::Black => Turn::White,
            Turn::Free => Turn::Free,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    occ: u64,
    white: u64,
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    value: u8,
    /// `(from, to)` cell indices of the best move, if any move was made.
    best: Option<(u8, u8)>,
}

struct Search {
    cells: Vec<Coord>,
    adj: Vec<u64>,
    black_squares: u64,
    start_white: u64,
    table: DashMap<(State, Turn), Entry>,
    nodes: AtomicU64,
    jobs: usize,
}

impl Search {
    fn new(cfg: &Configuration, jobs: usize) -> Self {
        let cells: Vec<Coord> = cfg.stones().map(|(c, _)| c).collect();
        let index: BTreeMap<Coord, usize> =
            cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut adj = vec![0u64; cells.len()];
        let mut black_squares = 0u64;
        let mut start_white = 0u64;
        for (i, &c) in cells.iter().enumerate() {
            for n in c.neighbors() {
                if let Some(&j) = index.get(&n) {
                    adj[i] |= 1 << j;
                }
            }
            if cfg.square_color(c) == Color::Black {
                black_squares |= 1 << i;
            }
            if cfg.get(c) == Some(Color::White) {
                start_white |= 1 << i;
            }
        }
        Search {
            cells,
            adj,
            black_squares,
            start_white,
            table: DashMap::new(),
            nodes: AtomicU64::new(0),
            jobs: jobs.max(1),
        }
    }

    fn start_state(&self) -> State {
        let n = self.cells.len();
        let occ = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        State {
            occ,
            white: self.start_white,
        }
    }

    fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes.load(Ordering::Relaxed),
            memo_entries: self.table.len() as u64,
        }
    }

    fn neighbors_of(&self, mut mask: u64) -> u64 {
        let mut out = 0;
        while mask != 0 {
            let i = mask.trailing_zeros() as usize;
            out |= self.adj[i];
            mask &= mask - 1;
        }
        out
    }

    /// Sum over components of 1 (mixed) or the component size (one color),
    /// raised to 2 when the delta class excludes a single survivor. Valid for
    /// every mode: components never merge or vanish, and one-colored
    /// components never move.
    fn bound(&self, s: State) -> u8 {
        let black = s.occ & !s.white;
        let clashing = (s.white & self.black_squares) | (black & !self.black_squares);
        let delta = s.occ.count_ones() + clashing.count_ones();
        let mut rest = s.occ;
        let mut total = 0u32;
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            loop {
                let grown = comp | (self.neighbors_of(comp) & s.occ);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            rest &= !comp;
            let w = comp & s.white;
            if w == 0 || w == comp {
                total += comp.count_ones();
            } else {
                total += 1;
            }
        }
        let delta_bound = if s.occ != 0 && delta.is_multiple_of(3) {
            2
        } else {
            0
        };
        total.max(delta_bound) as u8
    }

    /// Moves in row-major order of source, then target.
    fn moves(&self, s: State, turn: Turn) -> Vec<(u8, u8)> {
        let movers = match turn {
            Turn::White => s.white,
            Turn::Black => s.occ & !s.white,
            Turn::Free => s.occ,
        };
        let mut out = Vec::new();
        let mut m = movers;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            let targets = if s.white & (1 << i) != 0 {
                self.adj[i] & s.occ & !s.white
            } else {
                self.adj[i] & s.white
            };
            let mut t = targets;
            while t != 0 {
                let j = t.trailing_zeros() as usize;
                t &= t - 1;
                out.push((i as u8, j as u8));
            }
        }
        out
    }

    fn child(&self, s: State, (from, to): (u8, u8)) -> State {
        let from_bit = 1u64 << from;
        let to_bit = 1u64 << to;
        let mover_white = s.white & from_bit != 0;
        let mut white = s.white & !from_bit & !to_bit;
        if mover_white {
            white |= to_bit;
        }
        State {
            occ: s.occ & !from_bit,
            white,
        }
    }

    fn evaluate(
        &self,
        s: State,
        turn: Turn,
        children: impl Iterator<Item = ((u8, u8), u8)>,
    ) -> Entry {
        let bound = self.bound(s);
        let mut best = Entry {
            value: s.occ.count_ones() as u8,
            best: None,
        };
        if best.value <= bound {
            return best;
        }
        for (mv, value) in children {
            if value < best.value {
                best = Entry {
                    value,
                    best: Some(mv),
                };
                if value <= bound {
                    break;
                }
            }
        }
        let _ = turn;
        best
    }

    fn solve(&self, s: State, turn: Turn) -> u8 {
        if let Some(e) = self.table.get(&(s, turn)) {
            return e.value;
        }
        self.nodes.fetch_add(1, Ordering::Relaxed);
        let moves = self.moves(s, turn);
        let entry = self.evaluate(
            s,
            turn,
            moves
                .into_iter()
                .map(|mv| (mv, self.solve(self.child(s, mv), turn.next()))),
        );
        self.table.insert((s, turn), entry);
        entry.value
    }

    /// Root evaluation; fans the children out over `jobs` workers when asked.
    fn root(&self, s: State, turn: Turn) -> u8 {
        if self.jobs <= 1 {
            return self.solve(s, turn);
        }
        if let Some(e) = self.table.get(&(s, turn)) {
            return e.value;
        }
        let moves = self.moves(s, turn);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .expect("thread pool");
        let values: Vec<u8> = pool.install(|| {
            moves
                .par_iter()
                .map(|&mv| self.solve(self.child(s, mv), turn.next()))
                .collect()
        });
        self.nodes.fetch_add(1, Ordering::Relaxed);
        let entry = self.evaluate(s, turn, moves.into_iter().zip(values));
        self.table.insert((s, turn), entry);
        entry.value
    }

    fn witness(&self, mut s: State, mut turn: Turn) -> Vec<Move> {
        let mut out = Vec::new();
        while let Some(entry) = self.table.get(&(s, turn)).map(|e| *e) {
            let Some((from, to)) = entry.best else { break };
            let mover = if s.white & (1 << from) != 0 {
                Color::White
            } else {
                Color::Black
            };
            out.push(Move::new(
                mover,
                self.cells[from as usize],
                self.cells[to as usize],
            ));
            s = self.child(s, (from, to));
            turn = turn.next();
        }
        out
    }
}
