//! Board and plan file formats.
//!
//! Board files start with a header line `clobber v1 anchor=<0|1>` followed by
//! one line per row of the bounding box using `B`, `W` and `.`. Short rows are
//! padded with empty cells. A file without a header is read with anchor 0.
//!
//! Plan files hold one move per line, `W r1 c1 r2 c2` or `B r1 c1 r2 c2`.
//! Lines starting with `#` are comments; the comments are kept as the plan's
//! metadata.

use std::fmt::Write as _;

use thiserror::Error;

use crate::board::{Color, Configuration, Coord, Move};
use crate::plan::Plan;

pub const BOARD_HEADER_PREFIX: &str = "clobber v1 anchor=";

/// Error with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

pub fn parse_board(text: &str) -> Result<Configuration, ParseError> {
    let mut lines = text.split('\n').enumerate().peekable();
    let mut anchor = 0u8;
    let mut body_start = 0usize;
    if let Some((_, first)) = lines.peek() {
        if first.starts_with("clobber") {
            anchor = parse_header(first)?;
            body_start = 1;
            lines.next();
        }
    }
    let mut cfg = Configuration::new(anchor);
    for (idx, line) in lines {
        for (col, ch) in line.chars().enumerate() {
            let at = Coord::new((idx - body_start) as i32, col as i32);
            match ch {
                '.' => {}
                'B' | 'W' => {
                    cfg.insert(at, Color::from_glyph(ch).expect("glyph"));
                }
                other => {
                    return Err(ParseError::new(
                        idx + 1,
                        col + 1,
                        format!("unexpected character {other:?}"),
                    ))
                }
            }
        }
    }
    Ok(cfg)
}

fn parse_header(line: &str) -> Result<u8, ParseError> {
    let Some(rest) = line.strip_prefix(BOARD_HEADER_PREFIX) else {
        return Err(ParseError::new(
            1,
            1,
            format!("malformed header, expected `{BOARD_HEADER_PREFIX}<0|1>`"),
        ));
    };
    match rest {
        "0" => Ok(0),
        "1" => Ok(1),
        _ => Err(ParseError::new(
            1,
            BOARD_HEADER_PREFIX.len() + 1,
            "anchor must be 0 or 1",
        )),
    }
}

/// Writes `cfg` translated so that its bounding box starts at the origin.
/// The header carries the anchor of the translated board, so matching and
/// clashing stones stay as they were.
pub fn format_board(cfg: &Configuration) -> String {
    let canon = cfg.canonical();
    let mut out = format!("{BOARD_HEADER_PREFIX}{}\n", canon.parity_anchor());
    write!(out, "{canon}").expect("writing to a String");
    out
}

pub fn parse_plan(text: &str) -> Result<Plan, ParseError> {
    let mut moves = Vec::new();
    let mut notes = Vec::new();
    for (idx, raw) in text.split('\n').enumerate() {
        let line = raw.trim_end_matches(' ');
        if let Some(comment) = line.strip_prefix('#') {
            notes.push(comment.trim().to_string());
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        moves.push(parse_move_line(idx + 1, line)?);
    }
    let first_mover = moves.first().map_or(Color::White, |m: &Move| m.mover);
    Ok(Plan {
        first_mover,
        moves,
        metadata: notes.join("; "),
    })
}

fn parse_move_line(line_no: usize, line: &str) -> Result<Move, ParseError> {
    let mut fields = Vec::new();
    let mut pos = 0usize;
    for token in line.split(' ') {
        if !token.is_empty() {
            fields.push((pos + 1, token));
        }
        pos += token.chars().count() + 1;
    }
    if fields.len() != 5 {
        return Err(ParseError::new(
            line_no,
            1,
            format!("expected `W|B r1 c1 r2 c2`, found {} fields", fields.len()),
        ));
    }
    let (col0, color_tok) = fields[0];
    let mover = match color_tok {
        "W" => Color::White,
        "B" => Color::Black,
        _ => {
            return Err(ParseError::new(
                line_no,
                col0,
                format!("unknown mover {color_tok:?}"),
            ))
        }
    };
    let mut nums = [0i32; 4];
    for (slot, &(col, tok)) in nums.iter_mut().zip(&fields[1..]) {
        *slot = tok
            .parse()
            .map_err(|_| ParseError::new(line_no, col, format!("bad integer {tok:?}")))?;
    }
    Ok(Move::new(
        mover,
        Coord::new(nums[0], nums[1]),
        Coord::new(nums[2], nums[3]),
    ))
}

pub fn format_plan(plan: &Plan) -> String {
    let mut out = String::new();
    for note in plan.metadata.split("; ").filter(|s| !s.is_empty()) {
        writeln!(out, "# {note}").expect("writing to a String");
    }
    for m in &plan.moves {
        writeln!(out, "{m}").expect("writing to a String");
    }
    out
}
