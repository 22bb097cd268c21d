//! Stand-alone rules engine used as a test oracle.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use clobber_core::{Color, Configuration, Plan};

pub type Cells = BTreeMap<(i32, i32), bool>;

/// `true` marks a white stone.
pub fn cells(cfg: &Configuration) -> Cells {
    cfg.stones()
        .map(|(c, col)| ((c.row, c.col), col == Color::White))
        .collect()
}

pub fn grid(rows: i32, cols: i32) -> Cells {
    (0..rows)
        .flat_map(|r| (0..cols).map(move |c| ((r, c), (r + c) % 2 == 1)))
        .collect()
}

fn adjacent(a: (i32, i32), b: (i32, i32)) -> bool {
    (a.0 - b.0).abs() + (a.1 - b.1).abs() == 1
}

/// Plays a plan; returns the final cells or the index of the first bad move.
pub fn play(start: &Cells, plan: &Plan, alternating: bool) -> Result<Cells, usize> {
    let mut board = start.clone();
    let mut white_due = plan.first_mover == Color::White;
    for (i, m) in plan.moves.iter().enumerate() {
        let white = m.mover == Color::White;
        if alternating && white != white_due {
            return Err(i);
        }
        let from = (m.from.row, m.from.col);
        let to = (m.to.row, m.to.col);
        match (board.get(&from), board.get(&to)) {
            (Some(&a), Some(&b)) if a == white && b != white && adjacent(from, to) => {
                board.remove(&from);
                board.insert(to, white);
            }
            _ => return Err(i),
        }
        white_due = !white;
    }
    Ok(board)
}

fn moves(board: &Cells, white: bool) -> Vec<((i32, i32), (i32, i32))> {
    let mut out = Vec::new();
    for (&at, &w) in board {
        if w != white {
            continue;
        }
        for d in [(-1, 0), (1, 0), (0, -1), (0, 1)] {
            let to = (at.0 + d.0, at.1 + d.1);
            if board.get(&to) == Some(&!white) {
                out.push((at, to));
            }
        }
    }
    out
}

/// Fewest stones reachable by alternating play from `board` with the given
/// color to move. Stops early once `floor` is reached.
pub fn min_alternating(board: &Cells, white: bool, floor: usize) -> usize {
    fn go(
        board: &Cells,
        white: bool,
        floor: usize,
        memo: &mut HashMap<(Vec<((i32, i32), bool)>, bool), usize>,
    ) -> usize {
        let key = (
            board.iter().map(|(&k, &v)| (k, v)).collect::<Vec<_>>(),
            white,
        );
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut best = board.len();
        for (from, to) in moves(board, white) {
            if best <= floor {
                break;
            }
            let mut next = board.clone();
            next.remove(&from);
            next.insert(to, white);
            best = best.min(go(&next, !white, floor, memo));
        }
        memo.insert(key, best);
        best
    }
    go(board, white, floor, &mut HashMap::new())
}

/// Same without alternation: any color may move at any time.
pub fn min_free(board: &Cells) -> usize {
    fn go(board: &Cells, memo: &mut HashMap<Vec<((i32, i32), bool)>, usize>) -> usize {
        let key: Vec<_> = board.iter().map(|(&k, &v)| (k, v)).collect();
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut best = board.len();
        for white in [true, false] {
            for (from, to) in moves(board, white) {
                let mut next = board.clone();
                next.remove(&from);
                next.insert(to, white);
                best = best.min(go(&next, memo));
            }
        }
        memo.insert(key, best);
        best
    }
    go(board, &mut HashMap::new())
}

/// Stones plus clashing stones, with black squares where `(r + c) % 2 == anchor`.
pub fn delta(board: &Cells, anchor: i32) -> usize {
    let clashing = board
        .iter()
        .filter(|(&(r, c), &white)| {
            let black_square = (r + c).rem_euclid(2) == anchor;
            white == black_square
        })
        .count();
    board.len() + clashing
}
