//! The macro library.
//!
//! Each macro is written as waypoints separated by run headers. `W3` means
//! three alternating moves with White first, `*n` means `n` moves by whoever
//! is due, and a parenthesized tail is played only when the macro is the last
//! step of a reduction. Run lengths are always recomputed from the stone
//! counts of adjacent waypoints; the written numbers are kept for reference.

use std::sync::OnceLock;

use crate::board::Color;

use super::pattern::{Pattern, PatternError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    /// Written first mover; `None` when the run continues the alternation.
    pub first: Option<Color>,
    /// Written length.
    pub written: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepMacro {
    pub id: &'static str,
    pub waypoints: Vec<Pattern>,
    /// `runs[i]` leads from `waypoints[i]` to `waypoints[i + 1]`.
    pub runs: Vec<Run>,
    /// Index of the first run that is played only at the very end.
    pub final_from: Option<usize>,
}

impl StepMacro {
    pub fn parse(id: &'static str, text: &str) -> Result<StepMacro, PatternError> {
        let err = |msg: String| PatternError(format!("{id}: {msg}"));
        let mut waypoints = Vec::new();
        let mut runs = Vec::new();
        let mut final_from = None;
        let mut rest = text.trim();
        while !rest.is_empty() {
            if let Some(body) = rest.strip_prefix('[') {
                let end = body.find(']').ok_or_else(|| err("unclosed grid".into()))?;
                waypoints.push(Pattern::parse(&body[..end]).map_err(|e| err(e.0))?);
                rest = body[end + 1..].trim_start();
                continue;
            }
            if let Some(r) = rest.strip_prefix('(') {
                if final_from.is_some() {
                    return Err(err("nested final group".into()));
                }
                final_from = Some(runs.len());
                rest = r.trim_start();
                continue;
            }
            if let Some(r) = rest.strip_prefix(')') {
                rest = r.trim_start();
                continue;
            }
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            let tok = &rest[..end];
            let (first, digits) = match tok.split_at(1) {
                ("W", d) => (Some(Color::White), d),
                ("B", d) => (Some(Color::Black), d),
                ("*", d) => (None, d),
                _ => return Err(err(format!("unexpected token {tok:?}"))),
            };
            let written = digits
                .parse()
                .map_err(|_| err(format!("bad run length in {tok:?}")))?;
            if runs.len() + 1 != waypoints.len() {
                return Err(err(format!("run {tok:?} is not between two waypoints")));
            }
            runs.push(Run { first, written });
            rest = rest[end..].trim_start();
        }
        if waypoints.is_empty() || runs.len() + 1 != waypoints.len() {
            return Err(err("waypoints and runs do not interleave".into()));
        }
        let height = waypoints[0].height();
        let split = waypoints[0].is_split();
        if waypoints
            .iter()
            .any(|w| w.height() != height || w.is_split() != split)
        {
            return Err(err("waypoints differ in shape".into()));
        }
        Ok(StepMacro {
            id,
            waypoints,
            runs,
            final_from,
        })
    }

    pub fn pre_pattern(&self) -> &Pattern {
        &self.waypoints[0]
    }

    /// Last waypoint reached with or without the final-only tail.
    pub fn post_pattern(&self, last_step: bool) -> &Pattern {
        &self.waypoints[self.waypoint_count(last_step) - 1]
    }

    pub fn waypoint_count(&self, last_step: bool) -> usize {
        match (self.final_from, last_step) {
            (Some(f), false) => f + 1,
            _ => self.waypoints.len(),
        }
    }

    pub fn has_final_tail(&self) -> bool {
        self.final_from.is_some()
    }

    /// Moves between waypoints `i` and `i + 1`, from the stone counts.
    pub fn run_length(&self, i: usize) -> usize {
        self.waypoints[i].stone_count() - self.waypoints[i + 1].stone_count()
    }

    /// Written first mover of the macro, if any run names one.
    pub fn written_first(&self) -> Option<Color> {
        let mut offset = 0;
        for (i, r) in self.runs.iter().enumerate() {
            if let Some(c) = r.first {
                return Some(if offset % 2 == 0 { c } else { c.opposite() });
            }
            offset += self.run_length(i);
        }
        None
    }
}

const SOURCES: &[(&str, &str)] = &[
    // Even rows and columns: edge trims.
    ("ee.pretrim", "[BW/WB | BW/WB] W3 [BW/WB | ../W.] B3 [../.B | ../W.]"),
    (
        "ee.trim",
        "[.BWB/BWBW | WBW./BWBW] W4 [.W.B/.BbW | W.B./BWw.] W4 [...B/..Ww | W.../Bb..] \
         W2 [..../...W | ..../B...]",
    ),
    // Even rows and columns, bottom strip of width 6.
    (
        "ee1.s1",
        "[.BWBW./BWBWBW] W3 [...BW./.WBWBW] B3 [....../.WBWB.] W2 [....../..WB..] \
         ( *1 [....../...W..] )",
    ),
    (
        "ee1.s2",
        "[..WB../.BWBW./BWBWBW] W2 [..W.../.BWB../BWBWBW] W2 [..W.../..Bb../BWBWw.] \
         W2 [....../..WB../.BbWw.] W2 [....../....../.BWBW.] W3 [....../....../..W...]",
    ),
    (
        "ee1.s3",
        "[..W.../.BWBW./BWBWBW] B2 [..W.../.BWBW./.BbWw.] B2 [....../..WBW./.BbWw.] \
         B2 [....../....B./.BWwW.] B1 [....../....../.BWwB.] W2 [....../....../.W.B..]",
    ),
    (
        "ee1.s4",
        "[.W.B../.BWBW./BWBWBW] W2 [.W..../.B.BW./BWBWBW] W2 [....../.W..B./BWBWBW] \
         W2 [....../.W..B./.BbWw.] W2 [....../....../.WBWB.] W2 [....../....../..WB..] \
         ( *1 [....../....../...W..] )",
    ),
    // Width 8.
    (
        "ee2.s1",
        "[.BWBWBW./BWBWBWBW] W12 [......../...WB...] *1 [......../....W...]",
    ),
    (
        "ee2.s2",
        "[....W.../.BWBWBW./BWBWBWBW] B3 [....W.../.BWBW.../BWBWBWB.] \
         W3 [....W.../...BW.../.WBWBWB.] B2 [......../....W.../.WBWBWB.] \
         B2 [......../......../.WBWwB..] B4 [......../......../...W....]",
    ),
    (
        "ee2.s3",
        "[...W..../.BWBWBW./BWBWBWBW] B3 [...W..../.BWBW.../BWBWBWB.] \
         W2 [...W..../.W.BW.../.BbWBWB.] W2 [...W..../...BW.../.WBWBb..] \
         W2 [...W..../...B..../.WBWB...] W4 [......../......../.W.B....]",
    ),
    (
        "ee2.s4",
        "[.W.B..../.BWBWBW./BWBWBWBW] W2 [.W.B..../.BWBW.B./BWBWBWw.] \
         W4 [...B..../..WBW.../.WBWBWB.] W2 [......../...BW.../.WBWBWB.] \
         W4 [......../....W.../...WBb..] W3 [......../......../....W...]",
    ),
    // Width 10.
    (
        "ee3.s1",
        "[.BWBWBWBW./BWBWBWBWBW] W12 [....WB..../...WBWB...] W4 [........../...W.B....]",
    ),
    (
        "ee3.s2",
        "[...W.B..../.BWBWBWBW./BWBWBWBWBW] W6 [...W.B..../...BWBW.../.WBWBWBWB.] \
         W4 [...W....../...Bb.W.../..WwB.BWB.] W4 [........../........../..WBb.WwB.] \
         W4 [........../........../....W.B...]",
    ),
    (
        "ee3.s3",
        "[....W.B.../.BWBWBWBW./BWBWBWBWBW] W6 [....W.B.../...BWBW.../.WBWBWBWB.] \
         W4 [......B.../....WBW.../..WwBWBb..] W4 [........../......W.../..WB.WBb..] \
         W4 [........../........../...W.B....]",
    ),
    // Three and five columns.
    ("e3.s1", "[BWB/WBW] W2 [..B/BWw] W2 [.../W.B]"),
    (
        "e3.s2",
        "[W.B/BWB/WBW] W2 [W../B.B/WBW] W2 [.../W.B/B.W] W2 [.../.../W.B]",
    ),
    (
        "e5.s1",
        "[BWBWB/WBWBW] W2 [.BbWB/.WwBW] W2 [.BbB./.WwW.] W2 [.WB../..WB.] W3 [...../..W..]",
    ),
    (
        "e5.s2",
        "[..W../BWBWB/WBWBW] B4 [..W../.BbB./.WwW.] B3 [...../.BW../.WB..] \
         W3 [...../...../.W...]",
    ),
    (
        "e5.s3",
        "[.W.../BWBWB/WBWBW] B4 [.W.../.BbB./.WwW.] B3 [...../.W.B./.B.W.] \
         W2 [...../...../.W.B.]",
    ),
    (
        "e5.s4",
        "[.W.B./BWBWB/WBWBW] W4 [.W.../.BbBW/.WwB.] W2 [...../.B.BW/.WwB.] \
         W2 [...../...W./.BWB.] W3 [...../...../..W..]",
    ),
    // Odd columns: two-row and three-row trims.
    ("eo.pretrim2", "[BW/WB | WB/BW] W3 [.W/.. | WB/BW] B3 [.W/.. | ../B.]"),
    (
        "eo.trim2",
        "[WBWB/.WBW | BWB./WBWB] W3 [WBWB/.WBW | B.../WBW.] B3 [.BWB/...W | B.../WBW.] \
         W2 [..Bb/...W | B.../Ww..] W4 [...B/.... | ..../W...]",
    ),
    ("eo.pretrim3", "[BW/WB/BW | WB/BW/WB] W8 [.B/../.W | W./../B.]"),
    (
        "eo.trim3",
        "[BbW/.WB/WBW | WBW/BW./WBb] W3 [.BW/..B/.Ww | WBW/BW./WBb] \
         B3 [..B/.../..W | WBW/BW./WBb] W3 [..B/.../..W | Ww./B../WB.] \
         B3 [..B/.../..W | W../.../B..]",
    ),
    ("eo.trim3.left", "[BbW/.WB/WBW] W3 [.BW/..B/.Ww] B3 [..B/.../..W]"),
    // Three rows, first step.
    ("o3.s1", "[BbW/.W./WBb] W2 [BbW/.W./.B.] W3 [.B./.../.W.]"),
    (
        "o3.s1p",
        "[BbWBW/.WBW./WBWBb] W2 [.B.BW/.WBW./WBWBb] W2 [.B.W./.W.B./WBWBb] \
         W2 [...../.B.W./WBWBb] W2 [...../...W./.BWBb] W3 [...../...../.B.W.]",
    ),
    // Odd columns, strip width 5.
    (
        "c1.1a",
        "[BWBW./.BWBW] W2 [BWBW./..BW.] W2 [.BW../..BW.] W2 [..B../..W..] \
         ( *1 [..W../.....] )",
    ),
    ("c1.1b", "[WBWB./.WBWB] W2 [.WB../.WBWB] W2 [..W../.WBb.] W3 [...../..W..]"),
    (
        "c1.2a",
        "[..B../..W../BWBW./.BWBW] W2 [..B../..W../.BbW./.W.BW] W2 [...../..B../.WBW./...BW] \
         W2 [...../...../..BW./...BW] W2 [...../...../...B./...W.] \
         ( *1 [...../...../...W./.....] )",
    ),
    (
        "c1.2a3",
        "[...B.../...W.../BbWBWBW/.WBWBW./WBWBWBb] W4 [...B.../...W.../...BWBW/.BbWBW./.WwBWBb] \
         W4 [...B.../...W.../...BWBW/..BWBW./....WBb] W4 [...B.../...W.../...BWw./..BWBb./.......] \
         W4 [......./...B.../...BW../...BW../.......] W4 [......./......./......./...B.../.......]",
    ),
    (
        "c1.2b",
        "[..W../WBWB./.WBWB] B3 [...../WBW../.WBb.] W2 [...../WB.../.WB..] W3 [...../...../.W...]",
    ),
    (
        "c1.2b3",
        "[..W../BbWBW/.WBW./WBWBb] B4 [..W../BbWBW/.B.W./.W.B.] B4 [..W../BbWB./.W.../.....] \
         W5 [...../..B../...../.....]",
    ),
    (
        "c1.3a",
        "[...B./...W./BWBW./.BWBW] W2 [...B./...W./.BWw./.B.BW] W2 [...../...B./.W.W./.B.BW] \
         W2 [...../...../...B./.W.BW] W2 [...../...../...../.W.B.]",
    ),
    (
        "c1.3a3",
        "[....B../....W../BbWBWBW/.WBWBW./WBWBWBb] W4 [....B../....W../...BWBW/.BbWBW./.WwBWBb] \
         W4 [....B../....W../...BWBW/..BWBW./....WBb] W4 [....B../....W../...BWw./..BWBb./.......] \
         W4 [......./....B../...BW../...BW../.......] W4 [......./......./...B.../......./.......]",
    ),
    (
        "c1.3b",
        "[.W.../WBWB./.WBWB] B3 [...../WB.../.WBWB] W2 [...../.W.../.B.WB] W2 [...../...../.W.B.]",
    ),
    (
        "c1.3b3",
        "[.W.../BbWBW/.WBW./WBWBb] B4 [.W.../BbWBW/.B.W./.W.B.] B4 [.W.../BbWB./.W.../.....] \
         B5 [...../.B.../...../.....]",
    ),
    (
        "c1.4a",
        "[.W.B./BWBW./.BWBW] W2 [.W.B./.BbW./.BWw.] W2 [...../.WBb./.BWw.] W2 [...../..WB./..BW.] \
         W2 [...../..B../..W..] ( *1 [...../..W../.....] )",
    ),
    (
        "c1.4a3",
        "[W.B/BbW/.W./WBb] W2 [.../WBb/.W./WBb] W2 [.../.B./.W./WBb] W3 [.../.B./.../.W.]",
    ),
    (
        "c1.4bp",
        "[.W.B./.BWBW/BWBW.] W2 [.W.../.BWB./BWBW.] W2 [.W.../.B.B./.BWw.] W2 [...../.W.../.BWB.] \
         W3 [...../...../..W..]",
    ),
    (
        "c1.4bp3",
        "[.W.B./BbWBW/.WBW./WBWBb] W4 [.W.B./BbWBW/.B.W./.W.B.] W4 [.W.B./BbWB./.W.../.....] \
         W5 [...../.W.B./...../.....]",
    ),
    // Odd columns, strip width 7.
    (
        "c2.1a",
        "[BWBWBW./.BWBWBW] W2 [.BW.BW./.BWBWBW] W2 [.W..BW./.Bb.WBW] W2 [.W...B./.Bb.Ww.] \
         W4 [......./..W.B..]",
    ),
    (
        "c2.1b",
        "[WBWBWB./.WBWBWB] W2 [.WB.WB./.WBWBWB] W2 [.B..WB./.Ww.BWB] W2 [.B...W./.Ww.Bb.] \
         W4 [......./..B.W..]",
    ),
    (
        "c2.2a",
        "[..W.B../BWBWBW./.BWBWBW] W2 [..W.B../.BbWw../.BWBWBW] W2 [....B../..W.W../..BbWBW] \
         W2 [......./....B../..WBWBW] W2 [......./....B../..W.BW.] W2 [......./......./..W.B..]",
    ),
    (
        "c2.2b",
        "[..B.W../WBWBWB./.WBWBWB] W2 [....W../.WBbWB./.WBWBWB] W2 [....W../.WB.Bb./.Ww.BWB] \
         W2 [......./.B..WB./.Ww.BWB] W6 [......./......./..B.W..]",
    ),
    // Odd columns, strip width 9.
    (
        "c3.1a",
        "[BWBWBWBW./.BWBWBWBW] W4 [.BbWBW.B./.W.BWBWw.] W4 [..WBbW.../....WBWB.] \
         W4 [...WB..../....WB...] W3 [........./....W....]",
    ),
    (
        "c3.1b",
        "[WBWBWBWB./.WBWBWBWB] W4 [.WwBWB.W./.B.WBWBb.] W4 [..BbWB.../...WBWw..] \
         W4 [...B...../...WBW...] W3 [........./...W.....]",
    ),
    (
        "c3.2a",
        "[....W..../BWBWBWBW./.BWBWBWBW] B4 [........./BWBWwW.../.BWBWBWB.] \
         B4 [........./BWBWwW.../.W.B.B...] B4 [........./..WwWB.../...B.....] \
         ( B4 [........./....W..../.........] )",
    ),
    (
        "c3.2a3",
        "[...W.../BbWBWBW/.WBWBW./WBWBWBb] B4 [...W.../.B.BWBW/.WBWBW./WBb..WB] \
         B4 [...W.../...BWBW/.WBWBW./..B..B.] B4 [...W.../...BWw./..BWBb./.......] \
         B4 [......./....W../..BWB../.......] B3 [......./......./....B../.......]",
    ),
    (
        "c3.2b",
        "[...W...../WBWBWBWB./.WBWBWBWB] B6 [...W...../.BWBWB.../...WBWBW.] \
         B3 [...W...../..BbW..../...WBbW..] W4 [........./....B..../....WBW..] \
         W3 [........./........./....W....]",
    ),
    (
        "c3.3a",
        "[..WwWB.../...B...../BWBWBWBW./.BWBWBWBW] B4 [..WwB..../...B...../BWBWBWBW./..W..BWBW] \
         B4 [..WwB..../...B...../..BWBWwW./.....B.BW] B4 [........./...W...../...BbWwW./.....B.BW] \
         B6 [........./........./.....W.../.....B..W] ( *1 [........./........./.....B.../........W] )",
    ),
    (
        "c3.3a3",
        "[WwWB/.B../.BbW/..W./.WBb] B4 [.W../.B../.BbW/..W./..WB] B4 [..../.W../.BW./..B./....] \
         B3 [..../..../.B../..../....]",
    ),
    (
        "c3.3b",
        "[....W..../.BWBWBWBW/BWBWBWBW.] B6 [....W..../...BWBWB./.WBWBW...] \
         B3 [....W..../....BbB../..WwBW...] W4 [........./.....B.../..WB.W...] \
         W2 [........./........./...W.B...]",
    ),
    (
        "c3.4a",
        "[.....W.../.....B..W/.WBWBWBWB/WBWBWBWB.] B4 [.....W.../.....B.../.WBWBWBW./WBWBW.B..] \
         B4 [........./.....W.../.B.WBWB../WBWBW....] B4 [........./........./...WBW.../.BWBW....] \
         B4 [........./........./....W..../...BW....] B2 [........./........./........./....W....]",
    ),
    (
        "c3.4a3",
        "[..W..../..B..W./BbWBWBW/.WBWBW./WBWBWBb] B4 [..W..../..B..../BbWBbWw/.WBW.W./WBWB.B.] \
         B4 [......./..W..../BbWBbW./.WBW.../WBWB...] B4 [......./..W..../BbWBW../.WBW.../.B.....] \
         B4 [......./..W..../BbWw.../..B..../.......] B4 [......./......./B.W..../......./.......]",
    ),
    (
        "c3.4b",
        "[...W.B.../WBWBWBWB./.WBWBWBWB] W4 [...W.B.../.BWB.WwB./...WBWBWB] \
         W4 [...W...../.BWB.B.../...WBWBW.] W4 [...W...../..Bb...../...WBW...] \
         W4 [........./........./...W.....]",
    ),
    // Whole small boards, White first.
    ("app.2x2", "[BW/WB] *1 [B./Ww] *1 [../BW] *1 [../W.]"),
    (
        "app.2x4",
        "[BWBW/WBWB] *1 [BWB./WBWw] *1 [BW../WBbW] *1 [BW../WBW.] *1 [.W../BbW.] \
         *1 [..../BWw.] *1 [..../.BW.] *1 [..../.W..]",
    ),
    (
        "app.2x6",
        "[BWBWBW/WBWBWB] W3 [BWBW../WBWBW.] B3 [..BW../.BWBW.] W2 [....../.BbWw.] \
         W2 [....../..B.W.]",
    ),
    ("app.3x3", "[BWB/WBW/BWB] W2 [W.B/B.W/BWB] W3 [.../.../W.B]"),
    (
        "app.3x5",
        "[BWBWB/WBWBW/BWBWB] W2 [BWBWB/..WBW/WBbWB] W2 [.BbWB/..WBW/.WBWB] \
         W2 [..BWB/...BW/.WBWB] W2 [...BW/...B./.WBWB] W2 [...W./...B./.WBb.] \
         W3 [...../...../.B.W.]",
    ),
    (
        "app.4x4",
        "[.W../BWBW/WBWB] *1 [.W../.BbW/WBWB] *1 [..../.WBW/WBWB] *1 [..../.B.W/WBWB] \
         *1 [..../.B.W/.WwB] *1 [..../...W/.BWB] *1 [..../..../.BWw] *1 [..../..../..BW] \
         *1 [..../..../..W.]",
    ),
    (
        "app.4x6",
        "[..B.W./BWBWBW/WBWBWB] W2 [....W./B.BWBW/WBWBWB] W2 [....../B.BWwB/WBWBW.] \
         W2 [....../B.BWB./Ww.BW.] W2 [....../B..BW./Ww.B..] W4 [....../....../.B.W..]",
    ),
    (
        "app.6x6",
        "[.B.W../BWBWBW/WBWBWB] W2 [...W../WBbWBW/.BWBWB] W2 [...W../.WBbBW/.BW.WB] \
         W2 [....../.BbWBW/..W.WB] W2 [....../..B.BW/..W.WB] W2 [....../..B.../..W.BW] \
         W2 [....../....../..B.W.]",
    ),
    ("app.5x5", FIVE_BY_FIVE),
];

const FIVE_BY_FIVE: &str = "[BWBWB/WBWBW/BWBWB/WBWBW/BWBWB] W4 [W..B./WW.BB/BWBWB/WBWBW/BWBWB] \
     W4 [W..B./WB.BW/B..W./WBWB./BWBWB] W4 [W..../B..B./B..W./WBWB./B.WWB] \
     W4 [...../...../W..B./WBWB./B.WB.] W4 [...../...../W..../BBWB./.....] \
     W4 [...../...../...../.B.../.....]";

/// Every macro, parsed once.
pub fn step_library() -> &'static [StepMacro] {
    static LIB: OnceLock<Vec<StepMacro>> = OnceLock::new();
    LIB.get_or_init(|| {
        SOURCES
            .iter()
            .map(|&(id, text)| StepMacro::parse(id, text).expect("library macro parses"))
            .collect()
    })
}

pub fn get(id: &str) -> &'static StepMacro {
    step_library()
        .iter()
        .find(|m| m.id == id)
        .unwrap_or_else(|| panic!("unknown macro {id}"))
}
