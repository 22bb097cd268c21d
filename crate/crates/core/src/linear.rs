//! One-row checkerboard lines.

use crate::board::{BoardError, Color, Coord, Move};
use crate::plan::Plan;

/// Fewest stones a line of `n` alternating stones can be reduced to.
pub fn line_bound(n: i64) -> Result<usize, BoardError> {
    if n <= 0 {
        return Err(BoardError::InvalidSize { rows: 1, cols: n });
    }
    let n = n as usize;
    Ok(n.div_ceil(4) + usize::from(n % 4 == 3))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSchedule {
    pub blocks: Vec<Block>,
}

/// Full blocks of four, then the remainder block (if any).
pub fn block_split(n: usize) -> BlockSchedule {
    let blocks = (0..n)
        .step_by(4)
        .map(|start| Block {
            start,
            len: (n - start).min(4),
        })
        .collect();
    BlockSchedule { blocks }
}

/// Alternating moves `(from, to)` in block-local columns for a block that
/// starts on a black stone.
pub fn block_moves(len: usize, first: Color) -> &'static [(u8, u8)] {
    match (len, first) {
        (2 | 3, Color::White) => &[(1, 0)],
        (2 | 3, Color::Black) => &[(0, 1)],
        (4, Color::White) => &[(3, 2), (0, 1), (2, 1)],
        (4, Color::Black) => &[(0, 1), (3, 2), (1, 2)],
        _ => &[],
    }
}

/// Stones left in a block after its table is played.
pub fn block_survivors(len: usize) -> usize {
    if len == 3 {
        2
    } else {
        len.min(1)
    }
}

pub fn reduce_line(n: i64, first: Color) -> Result<Plan, BoardError> {
    line_bound(n)?;
    let mut plan = Plan::new(first, format!("reduce-line n={n} first={first}"));
    let mut mover = first;
    for block in block_split(n as usize).blocks {
        for &(from, to) in block_moves(block.len, mover) {
            let at = |c: u8| Coord::new(0, (block.start + c as usize) as i32);
            plan.moves.push(Move::new(mover, at(from), at(to)));
            mover = mover.opposite();
        }
    }
    Ok(plan)
}
