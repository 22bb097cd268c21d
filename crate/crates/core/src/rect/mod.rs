//! Rectangular checkerboards.
//!
//! Boards with both sides at most six use whole-board scripts. Larger boards
//! are turned so that there are at least seven columns and then cleared two
//! rows at a time from the top: each pair of rows is first trimmed from both
//! ends down to a short strip, then a step macro folds the strip (and the
//! stones left over from the pair above) into a small remainder. With an odd
//! row count the bottom three rows are trimmed before anything else and
//! finished by a three-row step.

mod gap;
mod library;
mod pattern;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::board::{checkerboard, BoardError, Color, Configuration, Coord, Move};
use crate::plan::Plan;

pub use gap::{solve_waypoint_gap, GapError, MAX_GAP_MOVES};
pub use library::{step_library, Run, StepMacro};
pub use pattern::{Pattern, PatternError, Placement, Transform};

/// Longest merged gap the scheduler will search when a written waypoint
/// cannot be reached on its own.
const MAX_MERGED_GAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Small,
    EE,
    OERotated,
    EO,
    OO,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::Small => "small",
            CaseTag::EE => "EE",
            CaseTag::OERotated => "OE-rotated",
            CaseTag::EO => "EO",
            CaseTag::OO => "OO",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RectError {
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error("macro {id} does not match the board at {at:?}")]
    PatternMismatch { id: &'static str, at: Placement },
    #[error("macro {id}: waypoint {waypoint} is unreachable with {first} to move")]
    Unresolvable {
        id: &'static str,
        waypoint: usize,
        first: Color,
    },
}

/// Stones a rectangular checkerboard ends with.
pub fn rect_minimum(n: i64, m: i64) -> usize {
    if (n * m) % 3 == 0 {
        2
    } else {
        1
    }
}

/// How a board of `n` rows and `m` columns is handled, plus whether the
/// handled board is the transpose of the input.
fn orient(n: i64, m: i64) -> Result<(CaseTag, bool), BoardError> {
    if n < 2 || m < 2 {
        return Err(BoardError::InvalidSize { rows: n, cols: m });
    }
    if n <= 6 && m <= 6 {
        let narrow = |r: i64, c: i64| r % 2 == 0 && (c == 3 || c == 5);
        let transposed = if narrow(n, m) {
            false
        } else {
            narrow(m, n) || n > m
        };
        return Ok((CaseTag::Small, transposed));
    }
    let (transposed, r, c) = if m >= 7 { (false, n, m) } else { (true, m, n) };
    Ok(match (r % 2 == 0, c % 2 == 0) {
        (true, true) => (CaseTag::EE, transposed),
        (true, false) => (CaseTag::EO, transposed),
        (false, false) => (CaseTag::OO, transposed),
        (false, true) if r < 7 => (CaseTag::OERotated, !transposed),
        (false, true) => (CaseTag::EO, !transposed),
    })
}

pub fn classify_case(n: i64, m: i64) -> Result<CaseTag, BoardError> {
    orient(n, m).map(|(tag, _)| tag)
}

/// Alternating plan reducing the `n x m` checkerboard to [`rect_minimum`]
/// stones.
pub fn reduce_rect(n: i64, m: i64) -> Result<Plan, RectError> {
    let (tag, transposed) = orient(n, m)?;
    let (rows, cols) = if transposed { (m, n) } else { (n, m) };
    let mut engine = Engine::new(checkerboard(rows, cols)?);
    let (rows, cols) = (rows as i32, cols as i32);
    match tag {
        CaseTag::Small => engine.small(rows, cols)?,
        CaseTag::OERotated => engine.narrow(rows, cols)?,
        CaseTag::EE => engine.even_even(rows, cols)?,
        CaseTag::EO | CaseTag::OO => engine.odd_cols(rows, cols)?,
    }
    let mut moves = engine.moves;
    if transposed {
        for mv in &mut moves {
            mv.from = Coord::new(mv.from.col, mv.from.row);
            mv.to = Coord::new(mv.to.col, mv.to.row);
        }
    }
    let first = moves.first().map_or(Color::White, |mv| mv.mover);
    Ok(Plan {
        first_mover: first,
        moves,
        metadata: format!("reduce-rect n={n} m={m} case={tag} first={first}"),
    })
}

/// True when exactly two stones remain, in one row or column, with a single
/// empty cell between them.
pub fn survivors_separated(cfg: &Configuration) -> bool {
    let stones: Vec<Coord> = cfg.stones().map(|(c, _)| c).collect();
    let [a, b] = stones[..] else {
        return false;
    };
    let between = Coord::new((a.row + b.row) / 2, (a.col + b.col) / 2);
    let aligned = (a.row == b.row && (a.col - b.col).abs() == 2)
        || (a.col == b.col && (a.row - b.row).abs() == 2);
    aligned && cfg.get(between).is_none()
}

/// Moves of one macro on its own synthetic board (split blocks two columns
/// apart), starting with `first`.
pub fn resolve_macro(
    mac: &StepMacro,
    transform: Transform,
    first: Color,
    last_step: bool,
) -> Result<Vec<Move>, RectError> {
    type Key = (&'static str, Transform, Color, bool);
    static CACHE: OnceLock<Mutex<HashMap<Key, Result<Vec<Move>, RectError>>>> = OnceLock::new();
    let key = (mac.id, transform, first, last_step);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&key) {
        return hit.clone();
    }
    let result = resolve_uncached(mac, transform, first, last_step);
    cache
        .lock()
        .expect("cache lock")
        .insert(key, result.clone());
    result
}

/// Replays a macro on its synthetic board and checks that every waypoint is
/// passed in order. Returns the number of moves played.
pub fn validate_macro(mac: &StepMacro, first: Color, last_step: bool) -> Result<usize, RectError> {
    let moves = resolve_macro(mac, Transform::IDENTITY, first, last_step)?;
    let targets: Vec<Configuration> = mac.waypoints[..mac.waypoint_count(last_step)]
        .iter()
        .map(synthetic_board)
        .collect();
    let mut board = targets[0].clone();
    let mut next = 1;
    let mut mover = first;
    for mv in &moves {
        if mv.mover != mover {
            return Err(RectError::Unresolvable {
                id: mac.id,
                waypoint: next,
                first,
            });
        }
        board.play(mv)?;
        mover = mover.opposite();
        if next < targets.len() && board == targets[next] {
            next += 1;
        }
    }
    if next == targets.len() {
        Ok(moves.len())
    } else {
        Err(RectError::Unresolvable {
            id: mac.id,
            waypoint: next,
            first,
        })
    }
}

fn synthetic_board(p: &Pattern) -> Configuration {
    Configuration::from_stones(
        0,
        p.cells_at(p.synthetic_placement())
            .into_iter()
            .filter_map(|(c, v)| v.map(|v| (c, v))),
    )
}

fn resolve_uncached(
    mac: &StepMacro,
    transform: Transform,
    first: Color,
    last_step: bool,
) -> Result<Vec<Move>, RectError> {
    let boards: Vec<Configuration> = mac.waypoints[..mac.waypoint_count(last_step)]
        .iter()
        .map(|w| synthetic_board(&w.transformed(transform)))
        .collect();
    let mut moves = Vec::new();
    let mut mover = first;
    let mut i = 0;
    while i + 1 < boards.len() {
        let mut reached = None;
        for j in i + 1..boards.len() {
            let k = boards[i].len() - boards[j].len();
            if k > MAX_MERGED_GAP {
                break;
            }
            if let Ok(seq) = gap::connect(&boards[i], &boards[j], mover, k) {
                reached = Some((j, seq));
                break;
            }
        }
        let Some((j, seq)) = reached else {
            return Err(RectError::Unresolvable {
                id: mac.id,
                waypoint: i + 1,
                first: mover,
            });
        };
        if seq.len() % 2 == 1 {
            mover = mover.opposite();
        }
        moves.extend(seq);
        i = j;
    }
    Ok(moves)
}

/// Three-row finishing macro: id, transform, strip width, strip column
/// inside the window, and extra left-only trims.
struct Finish {
    id: &'static str,
    transform: Transform,
    strip: i32,
    offset: i32,
    left_trims: i32,
}

impl Finish {
    fn new(id: &'static str, strip: i32) -> Self {
        Finish {
            id,
            transform: Transform::IDENTITY,
            strip,
            offset: 0,
            left_trims: 0,
        }
    }
}

struct Engine {
    board: Configuration,
    moves: Vec<Move>,
    due: Option<Color>,
}

impl Engine {
    fn new(board: Configuration) -> Self {
        Engine {
            board,
            moves: Vec::new(),
            due: None,
        }
    }

    fn apply(
        &mut self,
        id: &str,
        transform: Transform,
        place: Placement,
        last_step: bool,
    ) -> Result<(), RectError> {
        let mac = library::get(id);
        let pre = mac.pre_pattern().transformed(transform);
        let matches = |board: &Configuration, p: &Pattern| {
            p.cells_at(place)
                .into_iter()
                .all(|(c, v)| board.get(c) == v)
        };
        if !matches(&self.board, &pre) {
            return Err(RectError::PatternMismatch {
                id: mac.id,
                at: place,
            });
        }
        let first = self
            .due
            .or_else(|| mac.written_first().map(|c| transform.color(c)))
            .unwrap_or(Color::White);
        let syn = pre.synthetic_placement();
        let lw = pre.left_width() as i32;
        let map = |c: Coord| {
            if c.col < lw {
                Coord::new(place.top + c.row, place.left + c.col)
            } else {
                Coord::new(place.top + c.row, place.right - (syn.right - c.col))
            }
        };
        for mv in resolve_macro(mac, transform, first, last_step)? {
            let real = Move::new(mv.mover, map(mv.from), map(mv.to));
            self.board
                .play(&real)
                .map_err(|_| RectError::PatternMismatch {
                    id: mac.id,
                    at: place,
                })?;
            self.due = Some(mv.mover.opposite());
            self.moves.push(real);
        }
        let post = mac.post_pattern(last_step).transformed(transform);
        if !matches(&self.board, &post) {
            return Err(RectError::PatternMismatch {
                id: mac.id,
                at: place,
            });
        }
        Ok(())
    }

    fn small(&mut self, rows: i32, cols: i32) -> Result<(), RectError> {
        let id = Transform::IDENTITY;
        match (rows, cols) {
            (2, 3) | (4, 3) | (6, 3) | (2, 5) | (4, 5) | (6, 5) => self.narrow(rows, cols)?,
            (2, 2) => self.apply("app.2x2", id, Placement::block(0, 0), true)?,
            (2, 4) => self.apply("app.2x4", id, Placement::block(0, 0), true)?,
            (2, 6) => self.apply("app.2x6", id, Placement::block(0, 0), true)?,
            (3, 3) => self.apply("app.3x3", id, Placement::block(0, 0), true)?,
            (3, 5) => self.apply("app.3x5", id, Placement::block(0, 0), true)?,
            (5, 5) => self.apply("app.5x5", id, Placement::block(0, 0), true)?,
            (4, 4) => {
                self.apply("app.2x4", id, Placement::block(0, 0), true)?;
                self.apply("app.4x4", id, Placement::block(1, 0), true)?;
            }
            (4, 6) | (6, 6) => {
                self.apply("app.2x6", id, Placement::block(0, 0), true)?;
                self.apply("app.4x6", id, Placement::block(1, 0), true)?;
                if rows == 6 {
                    self.apply("app.6x6", id, Placement::block(3, 0), true)?;
                }
            }
            _ => unreachable!("not a small board: {rows}x{cols}"),
        }
        Ok(())
    }

    /// Even row count, three or five columns.
    fn narrow(&mut self, rows: i32, cols: i32) -> Result<(), RectError> {
        let pairs = rows / 2;
        for p in 0..pairs {
            let step = if cols == 3 {
                if p == 0 {
                    "e3.s1"
                } else {
                    "e3.s2"
                }
            } else {
                ["e5.s1", "e5.s2", "e5.s3", "e5.s4"][cycle_index(p as usize, 4)]
            };
            let h = library::get(step).pre_pattern().height() as i32;
            self.apply(
                step,
                Transform::IDENTITY,
                Placement::block(2 * p - (h - 2), 0),
                p == pairs - 1,
            )?;
        }
        Ok(())
    }

    fn even_even(&mut self, rows: i32, cols: i32) -> Result<(), RectError> {
        let (family, width, kinds) = match cols % 3 {
            2 => ("ee1", 6, 4),
            1 => ("ee2", 8, 4),
            _ => ("ee3", 10, 3),
        };
        let trims = (cols - 2 - width) / 6;
        let step_tf = if trims % 2 == 1 {
            Transform::MIRROR_H
        } else {
            Transform::IDENTITY
        };
        let pairs = rows / 2;
        for p in 0..pairs {
            let top = 2 * p;
            self.apply(
                "ee.pretrim",
                Transform::IDENTITY,
                Placement::split(top, 0, cols - 1),
                false,
            )?;
            for j in 0..trims {
                self.apply(
                    "ee.trim",
                    if j % 2 == 1 {
                        Transform::MIRROR_H
                    } else {
                        Transform::IDENTITY
                    },
                    Placement::split(top, 1 + 3 * j, cols - 2 - 3 * j),
                    false,
                )?;
            }
            let step = format!("{family}.s{}", cycle_index(p as usize, kinds) + 1);
            let h = library::get(&step).pre_pattern().height() as i32;
            self.apply(
                &step,
                step_tf,
                Placement::block(top - (h - 2), 1 + 3 * trims),
                p == pairs - 1,
            )?;
        }
        Ok(())
    }

    fn odd_cols(&mut self, rows: i32, cols: i32) -> Result<(), RectError> {
        let (case, width, kinds) = match cols % 3 {
            1 => (1, 5, 4),
            0 => (2, 7, 2),
            _ => (3, 9, 4),
        };
        let trims = (cols - 2 - width) / 6;
        let kind_a = trims % 2 == 1;
        let pairs = rows / 2 - usize::from(rows % 2 == 1) as i32;

        if rows % 2 == 1 {
            let fin = finish_for(case, kind_a, pairs as usize, kinds, cols);
            self.trim_triple(rows - 3, cols, &fin)?;
            for p in 0..pairs {
                self.two_row_pair(p, cols, case, kind_a, kinds, trims, false)?;
            }
            let mac = library::get(fin.id);
            let h = mac.pre_pattern().height() as i32;
            let start =
                1 + 2 * ((cols - 2 - fin.strip - 2 * fin.left_trims) / 4) + 2 * fin.left_trims;
            self.apply(
                fin.id,
                fin.transform,
                Placement::block(rows - 3 - (h - 3), start - fin.offset),
                true,
            )?;
        } else {
            for p in 0..pairs {
                self.two_row_pair(p, cols, case, kind_a, kinds, trims, p == pairs - 1)?;
            }
        }
        Ok(())
    }

    fn trim_triple(&mut self, top: i32, cols: i32, fin: &Finish) -> Result<(), RectError> {
        let flip = if fin.transform.mirror_h {
            Transform::FLIP_V
        } else {
            Transform::IDENTITY
        };
        self.apply(
            "eo.pretrim3",
            flip,
            Placement::split(top, 0, cols - 1),
            false,
        )?;
        let sym = (cols - 2 - fin.strip - 2 * fin.left_trims) / 4;
        for j in 0..sym {
            self.apply(
                "eo.trim3",
                flip,
                Placement::split(top, 1 + 2 * j, cols - 2 - 2 * j),
                false,
            )?;
        }
        for h in 0..fin.left_trims {
            self.apply(
                "eo.trim3.left",
                flip,
                Placement::block(top, 1 + 2 * sym + 2 * h),
                false,
            )?;
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn two_row_pair(
        &mut self,
        p: i32,
        cols: i32,
        case: u8,
        kind_a: bool,
        kinds: usize,
        trims: i32,
        last: bool,
    ) -> Result<(), RectError> {
        let step = cycle_index(p as usize, kinds) + 1;
        let id = two_row_step(case, step, kind_a);
        let mirrored = matches!(
            (case, step, kind_a),
            (1, 4, false) | (3, 3, false) | (3, 4, true)
        );
        let base = if mirrored {
            Transform::FLIP_V_SWAP
        } else {
            Transform::IDENTITY
        };
        let top = 2 * p;
        self.apply(
            "eo.pretrim2",
            base,
            Placement::split(top, 0, cols - 1),
            false,
        )?;
        for j in 0..trims {
            self.apply(
                "eo.trim2",
                base.then_swap(j % 2 == 1),
                Placement::split(top, 1 + 3 * j, cols - 2 - 3 * j),
                false,
            )?;
        }
        let h = library::get(id).pre_pattern().height() as i32;
        self.apply(
            id,
            Transform::IDENTITY,
            Placement::block(top - (h - 2), 1 + 3 * trims),
            last,
        )
    }
}

/// Position in the step cycle 1, 2, ..., kinds, 2, ..., kinds, ...
fn cycle_index(p: usize, kinds: usize) -> usize {
    if p == 0 || kinds == 1 {
        0
    } else {
        1 + (p - 1) % (kinds - 1)
    }
}

fn two_row_step(case: u8, step: usize, kind_a: bool) -> &'static str {
    match (case, step, kind_a) {
        (1, 1, true) => "c1.1a",
        (1, 1, false) => "c1.1b",
        (1, 2, true) => "c1.2a",
        (1, 2, false) => "c1.2b",
        (1, 3, true) => "c1.3a",
        (1, 3, false) => "c1.3b",
        (1, 4, true) => "c1.4a",
        (1, 4, false) => "c1.4bp",
        (2, 1, true) => "c2.1a",
        (2, 1, false) => "c2.1b",
        (2, 2, true) => "c2.2a",
        (2, 2, false) => "c2.2b",
        (3, 1, true) => "c3.1a",
        (3, 1, false) => "c3.1b",
        (3, 2, true) => "c3.2a",
        (3, 2, false) => "c3.2b",
        (3, 3, true) => "c3.3a",
        (3, 3, false) => "c3.3b",
        (3, 4, true) => "c3.4a",
        (3, 4, false) => "c3.4b",
        _ => unreachable!("no step {step} in case {case}"),
    }
}

/// The three-row macro that replaces step `pairs` of the cycle.
fn finish_for(case: u8, kind_a: bool, pairs: usize, kinds: usize, cols: i32) -> Finish {
    if pairs == 0 {
        return if (cols - 2) % 4 == 3 {
            Finish::new("o3.s1", 3)
        } else {
            Finish::new("o3.s1p", 5)
        };
    }
    let step = cycle_index(pairs, kinds) + 1;
    match (case, step, kind_a) {
        (1, 2, true) => Finish::new("c1.2a3", 7),
        (1, 2, false) => Finish::new("c1.2b3", 5),
        (1, 3, true) => Finish::new("c1.3a3", 7),
        (1, 3, false) => Finish::new("c1.3b3", 5),
        (1, 4, true) => Finish::new("c1.4a3", 3),
        (1, 4, false) => Finish::new("c1.4bp3", 5),
        (2, _, true) => Finish::new("c1.4bp3", 5),
        (2, _, false) => Finish {
            transform: Transform::MIRROR_H,
            ..Finish::new("c1.4a3", 3)
        },
        (3, 2, true) => Finish::new("c3.2a3", 7),
        (3, 2, false) => Finish::new("c1.3b3", 5),
        (3, 3, true) => Finish {
            offset: 1,
            ..Finish::new("c3.3a3", 3)
        },
        (3, 3, false) => Finish::new("c1.2b3", 5),
        (3, 4, true) => Finish {
            left_trims: 2,
            ..Finish::new("c3.4a3", 7)
        },
        (3, 4, false) => Finish::new("c1.4bp3", 5),
        _ => unreachable!("no three-row step {step} in case {case}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plan::{replay, Validation};

    #[test]
    fn classification() {
        assert_eq!(classify_case(4, 4).unwrap(), CaseTag::Small);
        assert_eq!(classify_case(8, 8).unwrap(), CaseTag::EE);
        assert_eq!(classify_case(3, 9).unwrap(), CaseTag::OO);
        assert_eq!(classify_case(3, 8).unwrap(), CaseTag::OERotated);
        assert_eq!(classify_case(8, 5).unwrap(), CaseTag::OERotated);
        assert_eq!(classify_case(9, 8).unwrap(), CaseTag::EO);
        assert_eq!(classify_case(8, 9).unwrap(), CaseTag::EO);
        assert!(classify_case(1, 9).is_err());
    }

    #[test]
    fn cycles() {
        let seq: Vec<usize> = (0..8).map(|p| cycle_index(p, 4) + 1).collect();
        assert_eq!(seq, [1, 2, 3, 4, 2, 3, 4, 2]);
        let seq: Vec<usize> = (0..4).map(|p| cycle_index(p, 2) + 1).collect();
        assert_eq!(seq, [1, 2, 2, 2]);
    }

    #[test]
    fn small_examples() {
        let p = reduce_rect(2, 2).unwrap();
        assert_eq!(p.len(), 3);
        let p = reduce_rect(3, 3).unwrap();
        assert_eq!(p.len(), 7);
        let (end, _) = replay(&checkerboard(3, 3).unwrap(), &p, Validation::Alternating).unwrap();
        assert!(survivors_separated(&end));
        let p = reduce_rect(4, 8).unwrap();
        let (end, _) = replay(&checkerboard(4, 8).unwrap(), &p, Validation::Alternating).unwrap();
        assert_eq!(end.len(), 1);
    }
}
