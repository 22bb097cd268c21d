//! Move sequences and their replay.

use std::fmt;

use thiserror::Error;

use crate::board::{BoardError, Color, Configuration, Move};

/// An ordered list of moves: the certificate behind every reduction claim.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Plan {
    pub first_mover: Color,
    pub moves: Vec<Move>,
    /// Tag naming the producing algorithm and its parameters.
    pub metadata: String,
}

impl Plan {
    pub fn new(first_mover: Color, metadata: impl Into<String>) -> Self {
        Plan {
            first_mover,
            moves: Vec::new(),
            metadata: metadata.into(),
        }
    }

    /// Builds a plan whose first mover is taken from the first move
    /// (White for an empty list).
    pub fn from_moves(moves: Vec<Move>, metadata: impl Into<String>) -> Self {
        let first_mover = moves.first().map_or(Color::White, |m| m.mover);
        Plan {
            first_mover,
            moves,
            metadata: metadata.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn is_alternating(&self) -> bool {
        first_alternation_break(self).is_none()
    }

    /// Color of the mover that would follow the last move.
    pub fn next_mover(&self) -> Color {
        self.moves
            .last()
            .map_or(self.first_mover, |m| m.mover.opposite())
    }
}

/// Index of the first move that breaks strict alternation (or disagrees with
/// `first_mover` at index 0).
fn first_alternation_break(plan: &Plan) -> Option<usize> {
    let mut expected = plan.first_mover;
    for (i, m) in plan.moves.iter().enumerate() {
        if m.mover != expected {
            return Some(i);
        }
        expected = expected.opposite();
    }
    None
}

/// Move-order discipline enforced during replay.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validation {
    /// Every move must be legal; colors may repeat.
    LegalOnly,
    /// Every move must be legal and colors must strictly alternate, starting
    /// with the plan's first mover.
    Alternating,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayReport {
    pub moves_applied: usize,
    pub all_legal: bool,
    pub alternating: bool,
    pub initial_stones: usize,
    pub final_stones: usize,
    pub final_delta: usize,
}

impl fmt::Display for ReplayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "moves: {}", self.moves_applied)?;
        writeln!(f, "legal: {}", if self.all_legal { "yes" } else { "no" })?;
        writeln!(
            f,
            "alternating: {}",
            if self.alternating { "yes" } else { "no" }
        )?;
        writeln!(f, "initial stones: {}", self.initial_stones)?;
        writeln!(f, "final stones: {}", self.final_stones)?;
        write!(f, "final delta: {}", self.final_delta)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("move {index} is illegal: {source}")]
    IllegalMove {
        index: usize,
        #[source]
        source: BoardError,
    },
    #[error("move {index} breaks color alternation (expected {expected}, got {found})")]
    NotAlternating {
        index: usize,
        expected: Color,
        found: Color,
    },
}

impl ReplayError {
    pub fn index(&self) -> usize {
        match self {
            ReplayError::IllegalMove { index, .. } | ReplayError::NotAlternating { index, .. } => {
                *index
            }
        }
    }
}

/// Applies `plan` to `cfg`, stopping at the first violation.
pub fn replay(
    cfg: &Configuration,
    plan: &Plan,
    validation: Validation,
) -> Result<(Configuration, ReplayReport), ReplayError> {
    let mut board = cfg.clone();
    let mut expected = plan.first_mover;
    let mut alternating = true;
    for (index, m) in plan.moves.iter().enumerate() {
        if m.mover != expected {
            alternating = false;
            if validation == Validation::Alternating {
                return Err(ReplayError::NotAlternating {
                    index,
                    expected,
                    found: m.mover,
                });
            }
        }
        board
            .play(m)
            .map_err(|source| ReplayError::IllegalMove { index, source })?;
        expected = m.mover.opposite();
    }
    let report = ReplayReport {
        moves_applied: plan.moves.len(),
        all_legal: true,
        alternating,
        initial_stones: cfg.len(),
        final_stones: board.len(),
        final_delta: board.delta(),
    };
    Ok((board, report))
}
