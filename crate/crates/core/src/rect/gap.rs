use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::board::{Color, Configuration, Coord, Move};

/// Longest gap accepted by [`solve_waypoint_gap`].
pub const MAX_GAP_MOVES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapError {
    #[error("no alternating {k}-move sequence starting with {first} connects the waypoints")]
    NoConnectingSequence { first: Color, k: usize },
    #[error("gap of {k} moves exceeds the limit of {limit}")]
    TooLong { k: usize, limit: usize },
}

/// Finds the lexicographically first strictly alternating `k`-move sequence
/// that turns `pre` into `post`.
pub fn solve_waypoint_gap(
    pre: &Configuration,
    post: &Configuration,
    first: Color,
    k: usize,
) -> Result<Vec<Move>, GapError> {
    if k > MAX_GAP_MOVES {
        return Err(GapError::TooLong {
            k,
            limit: MAX_GAP_MOVES,
        });
    }
    connect(pre, post, first, k)
}

/// Same search without the length cap.
pub(crate) fn connect(
    pre: &Configuration,
    post: &Configuration,
    first: Color,
    k: usize,
) -> Result<Vec<Move>, GapError> {
    let fail = GapError::NoConnectingSequence { first, k };
    if pre.len() != post.len() + k || pre.len() > 64 {
        return Err(fail);
    }
    let cells: Vec<Coord> = pre.stones().map(|(c, _)| c).collect();
    let index: BTreeMap<Coord, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut target_occ = 0u64;
    let mut target_white = 0u64;
    for (c, color) in post.stones() {
        let Some(&i) = index.get(&c) else {
            return Err(fail);
        };
        target_occ |= 1 << i;
        if color == Color::White {
            target_white |= 1 << i;
        }
    }
    let mut adj = vec![0u64; cells.len()];
    for (i, c) in cells.iter().enumerate() {
        for n in c.neighbors() {
            if let Some(&j) = index.get(&n) {
                adj[i] |= 1 << j;
            }
        }
    }
    let white = pre
        .stones()
        .enumerate()
        .filter(|(_, (_, col))| *col == Color::White)
        .fold(0u64, |acc, (i, _)| acc | 1 << i);
    let occ = if cells.len() == 64 {
        u64::MAX
    } else {
        (1u64 << cells.len()) - 1
    };
    let search = GapSearch {
        adj,
        target_occ,
        target_white,
    };
    let mut failed = HashSet::new();
    let mut path = Vec::with_capacity(k);
    if search.dfs(occ, white, first, &mut failed, &mut path) {
        Ok(path
            .into_iter()
            .enumerate()
            .map(|(n, (from, to))| {
                let mover = if n % 2 == 0 { first } else { first.opposite() };
                Move::new(mover, cells[from], cells[to])
            })
            .collect())
    } else {
        Err(fail)
    }
}

struct GapSearch {
    adj: Vec<u64>,
    target_occ: u64,
    target_white: u64,
}

impl GapSearch {
    fn dfs(
        &self,
        occ: u64,
        white: u64,
        mover: Color,
        failed: &mut HashSet<(u64, u64)>,
        path: &mut Vec<(usize, usize)>,
    ) -> bool {
        // Occupied cells only ever shrink, so every source must be a cell
        // that is empty in the target.
        let sources = occ & !self.target_occ;
        if sources == 0 {
            return white == self.target_white;
        }
        if failed.contains(&(occ, white)) {
            return false;
        }
        let own = if mover == Color::White {
            white
        } else {
            occ & !white
        };
        let mut from_set = sources & own;
        while from_set != 0 {
            let from = from_set.trailing_zeros() as usize;
            from_set &= from_set - 1;
            let prey = if mover == Color::White {
                occ & !white
            } else {
                white
            };
            let mut to_set = self.adj[from] & prey;
            while to_set != 0 {
                let to = to_set.trailing_zeros() as usize;
                to_set &= to_set - 1;
                let next_occ = occ & !(1 << from);
                let next_white = if mover == Color::White {
                    (white & !(1 << from)) | 1 << to
                } else {
                    white & !(1 << to)
                };
                path.push((from, to));
                if self.dfs(next_occ, next_white, mover.opposite(), failed, path) {
                    return true;
                }
                path.pop();
            }
        }
        failed.insert((occ, white));
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::checkerboard;
    use crate::text::parse_board;

    #[test]
    fn identity_gap() {
        let b = checkerboard(2, 2).unwrap();
        assert_eq!(solve_waypoint_gap(&b, &b, Color::White, 0).unwrap(), vec![]);
    }

    #[test]
    fn two_by_two_to_one_stone() {
        let pre = checkerboard(2, 2).unwrap();
        let post = parse_board("..\nW.").unwrap();
        let moves = solve_waypoint_gap(&pre, &post, Color::White, 3).unwrap();
        let mut b = pre.clone();
        for m in &moves {
            b.play(m).unwrap();
        }
        assert_eq!(b, post);
        assert_eq!(moves[0].mover, Color::White);
    }

    #[test]
    fn wrong_count_fails() {
        let pre = checkerboard(2, 2).unwrap();
        let post = parse_board("..\nW.").unwrap();
        assert!(matches!(
            solve_waypoint_gap(&pre, &post, Color::White, 2),
            Err(GapError::NoConnectingSequence { .. })
        ));
        assert!(matches!(
            solve_waypoint_gap(&pre, &post, Color::White, 13),
            Err(GapError::TooLong { .. })
        ));
    }
}
