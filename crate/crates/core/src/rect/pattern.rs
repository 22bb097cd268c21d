//! Stone layouts used as macro waypoints.
//!
//! A pattern is one block of cells, or two blocks pinned to the left and
//! right edges of a strip (`[L | R]` in the text form). Text rows are
//! separated by `/`; `B`, `W` are stones (lowercase accepted), `.` is empty.

use std::fmt;

use crate::board::{Color, Coord};

pub type Cells = Vec<Vec<Option<Color>>>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub left: Cells,
    pub right: Option<Cells>,
}

/// Symmetries applied to a pattern before placement.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Transform {
    pub swap_colors: bool,
    pub mirror_h: bool,
    pub flip_v: bool,
}

impl Transform {
    pub const IDENTITY: Transform = Transform {
        swap_colors: false,
        mirror_h: false,
        flip_v: false,
    };
    pub const SWAP: Transform = Transform {
        swap_colors: true,
        mirror_h: false,
        flip_v: false,
    };
    pub const MIRROR_H: Transform = Transform {
        swap_colors: false,
        mirror_h: true,
        flip_v: false,
    };
    pub const FLIP_V: Transform = Transform {
        swap_colors: false,
        mirror_h: false,
        flip_v: true,
    };
    /// Upside-down with colors exchanged; keeps a two-row checkerboard fixed.
    pub const FLIP_V_SWAP: Transform = Transform {
        swap_colors: true,
        mirror_h: false,
        flip_v: true,
    };

    pub fn then_swap(self, swap: bool) -> Transform {
        Transform {
            swap_colors: self.swap_colors ^ swap,
            ..self
        }
    }

    pub fn color(self, c: Color) -> Color {
        if self.swap_colors {
            c.opposite()
        } else {
            c
        }
    }
}

/// Where a pattern lands on the board.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    /// Board row of pattern row 0.
    pub top: i32,
    /// Board column of the left block's column 0.
    pub left: i32,
    /// Board column of the right block's last column (split patterns only).
    pub right: i32,
}

impl Placement {
    pub fn block(top: i32, left: i32) -> Self {
        Placement {
            top,
            left,
            right: left,
        }
    }

    pub fn split(top: i32, left: i32, right: i32) -> Self {
        Placement { top, left, right }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternError(pub String);

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn parse_cells(text: &str) -> Result<Cells, PatternError> {
    let rows: Vec<Vec<Option<Color>>> = text
        .trim()
        .split('/')
        .map(|row| {
            row.chars()
                .map(|g| match g {
                    '.' => Ok(None),
                    'B' | 'b' => Ok(Some(Color::Black)),
                    'W' | 'w' => Ok(Some(Color::White)),
                    _ => Err(PatternError(format!("bad glyph {g:?} in {text:?}"))),
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let width = rows.first().map_or(0, Vec::len);
    if width == 0 || rows.iter().any(|r| r.len() != width) {
        return Err(PatternError(format!("ragged pattern {text:?}")));
    }
    Ok(rows)
}

fn cells_text(cells: &Cells) -> String {
    cells
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| c.map_or('.', Color::glyph))
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("/")
}

impl Pattern {
    /// Parses the body of a bracketed grid (without the brackets).
    pub fn parse(text: &str) -> Result<Pattern, PatternError> {
        let mut parts = text.split('|');
        let left = parse_cells(parts.next().unwrap_or(""))?;
        let right = parts.next().map(parse_cells).transpose()?;
        if parts.next().is_some() {
            return Err(PatternError(format!("too many blocks in {text:?}")));
        }
        if let Some(r) = &right {
            if r.len() != left.len() {
                return Err(PatternError(format!("block heights differ in {text:?}")));
            }
        }
        Ok(Pattern { left, right })
    }

    pub fn height(&self) -> usize {
        self.left.len()
    }

    pub fn is_split(&self) -> bool {
        self.right.is_some()
    }

    pub fn left_width(&self) -> usize {
        self.left[0].len()
    }

    pub fn right_width(&self) -> usize {
        self.right.as_ref().map_or(0, |r| r[0].len())
    }

    pub fn stone_count(&self) -> usize {
        let count = |cells: &Cells| cells.iter().flatten().filter(|c| c.is_some()).count();
        count(&self.left) + self.right.as_ref().map_or(0, count)
    }

    pub fn transformed(&self, t: Transform) -> Pattern {
        let map = |cells: &Cells, reverse_cols: bool| -> Cells {
            let mut rows: Cells = cells
                .iter()
                .map(|row| {
                    let mut r: Vec<Option<Color>> =
                        row.iter().map(|c| c.map(|c| t.color(c))).collect();
                    if reverse_cols {
                        r.reverse();
                    }
                    r
                })
                .collect();
            if t.flip_v {
                rows.reverse();
            }
            rows
        };
        match (&self.right, t.mirror_h) {
            (Some(right), true) => Pattern {
                left: map(right, true),
                right: Some(map(&self.left, true)),
            },
            (right, mirror) => Pattern {
                left: map(&self.left, mirror),
                right: right.as_ref().map(|r| map(r, mirror)),
            },
        }
    }

    /// Every cell of the pattern at `place`, stones and empties alike.
    pub fn cells_at(&self, place: Placement) -> Vec<(Coord, Option<Color>)> {
        let mut out = Vec::new();
        for (r, row) in self.left.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                out.push((Coord::new(place.top + r as i32, place.left + c as i32), v));
            }
        }
        if let Some(right) = &self.right {
            let start = place.right - self.right_width() as i32 + 1;
            for (r, row) in right.iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    out.push((Coord::new(place.top + r as i32, start + c as i32), v));
                }
            }
        }
        out
    }

    /// Placement used for gap solving: blocks side by side with two empty
    /// columns between them.
    pub fn synthetic_placement(&self) -> Placement {
        let lw = self.left_width() as i32;
        Placement::split(0, 0, lw + 2 + self.right_width() as i32 - 1)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", cells_text(&self.left))?;
        if let Some(r) = &self.right {
            write!(f, " | {}", cells_text(r))?;
        }
        write!(f, "]")
    }
}
