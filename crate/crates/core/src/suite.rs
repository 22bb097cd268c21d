//! Reproduction suites with plain-text reports.
//!
//! Reports contain no timings, so two runs with the same seed produce the
//! same bytes regardless of the worker count.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::board::{checkerboard, psi_line, Color, Configuration, Coord};
use crate::gadget::{
    build_gadget, circuit_to_plan, ham_brute, pick_anchor, plan_to_circuit, window_graphs,
    AnchorVerdict, GadgetLayout, GridGraph,
};
use crate::linear::{line_bound, reduce_line};
use crate::plan::{replay, Validation};
use crate::rect::{
    classify_case, rect_minimum, reduce_rect, step_library, survivors_separated, validate_macro,
    CaseTag,
};
use crate::solver::{Mode, Solver, SolverConfig, DEFAULT_LIMIT};

/// Minimum stones of the one-row lines of length 1 through 12.
pub const LINE_MINIMA: [usize; 12] = [1, 1, 2, 1, 2, 2, 3, 2, 3, 3, 4, 3];

pub const RANDOM_MOVES: usize = 10_000;
pub const RANDOM_SEQUENCES: usize = 1_000;
pub const MAX_SEQUENCE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, jobs: 1 }
    }
}

impl SuiteConfig {
    fn solver(&self) -> Solver {
        Solver::new(SolverConfig {
            limit: DEFAULT_LIMIT,
            jobs: self.jobs,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Criterion {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: Suite,
    pub lines: Vec<String>,
    pub criteria: Vec<Criterion>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== suite {} ==", self.suite.name())?;
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        for c in &self.criteria {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{verdict} {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lines,
    Delta,
    Rectangles,
    Gadgets,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Lines,
        Suite::Delta,
        Suite::Rectangles,
        Suite::Gadgets,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lines => "table1",
            Suite::Delta => "thm3",
            Suite::Rectangles => "thm4",
            Suite::Gadgets => "npc",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    pub fn run(self, cfg: SuiteConfig) -> Report {
        match self {
            Suite::Lines => lines(cfg),
            Suite::Delta => delta(cfg),
            Suite::Rectangles => rectangles(cfg),
            Suite::Gadgets => gadgets(cfg),
        }
    }
}

fn criterion(name: &'static str, failures: &[String], ok_detail: String) -> Criterion {
    Criterion {
        name,
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            ok_detail
        } else {
            failures.join("; ")
        },
    }
}

/// Exact minima of the one-row lines, and the block-split plans.
pub fn lines(cfg: SuiteConfig) -> Report {
    let solver = cfg.solver();
    let mut lines = vec!["n  table  bound  wfirst  bfirst  free".to_string()];
    let mut bad = Vec::new();
    for (i, &want) in LINE_MINIMA.iter().enumerate() {
        let n = i as i64 + 1;
        let line = psi_line(n).expect("positive length");
        let bound = line_bound(n).expect("positive length");
        let got: Vec<usize> = [
            Mode::AlternatingWhiteFirst,
            Mode::AlternatingBlackFirst,
            Mode::FreeOrder,
        ]
        .into_iter()
        .map(|mode| match solver.min_stones(&line, mode) {
            Ok(sol) => sol.min_stones,
            Err(_) => usize::MAX,
        })
        .collect();
        lines.push(format!(
            "{n:<2} {want:>5}  {bound:>5}  {:>6}  {:>6}  {:>4}",
            got[0], got[1], got[2]
        ));
        if bound != want || got.iter().any(|&g| g != want) {
            bad.push(format!("n={n}"));
        }
    }
    let exact = criterion(
        "line-minima",
        &bad,
        format!("{} lines match in all three modes", LINE_MINIMA.len()),
    );

    let mut bad = Vec::new();
    for n in 1..=64 {
        for first in [Color::White, Color::Black] {
            let start = psi_line(n).expect("positive length");
            let ok = reduce_line(n, first).ok().and_then(|plan| {
                replay(&start, &plan, Validation::Alternating)
                    .ok()
                    .map(|(end, _)| end.len() == line_bound(n).unwrap_or(0))
            });
            if ok != Some(true) {
                bad.push(format!("n={n} first={first}"));
            }
        }
    }
    let constructive = criterion("line-plans", &bad, "128 plans reach the bound".into());
    Report {
        suite: Suite::Lines,
        lines,
        criteria: vec![exact, constructive],
    }
}

/// Random configuration in a 6x6 window with about 60% of cells filled.
fn random_configuration(rng: &mut ChaCha8Rng) -> Configuration {
    let mut cfg = Configuration::new(rng.gen_range(0..2));
    for r in 0..6 {
        for c in 0..6 {
            if rng.gen_bool(0.6) {
                let color = if rng.gen_bool(0.5) {
                    Color::White
                } else {
                    Color::Black
                };
                cfg.insert(Coord::new(r, c), color);
            }
        }
    }
    cfg
}

/// Delta changes of single moves and delta classes along move sequences.
pub fn delta(cfg: SuiteConfig) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut bad = Vec::new();
    let (mut zero, mut minus_three) = (0usize, 0usize);
    let mut pairs = 0;
    while pairs < RANDOM_MOVES {
        let board = random_configuration(&mut rng);
        let moves = board.all_legal_moves();
        let Some(mv) = moves.choose(&mut rng) else {
            continue;
        };
        pairs += 1;
        let matching = board.is_matching(mv.from) == Some(true);
        let mut next = board.clone();
        next.play(mv).expect("generated moves are legal");
        let change = next.delta() as i64 - board.delta() as i64;
        match (change, matching) {
            (0, true) => zero += 1,
            (-3, false) => minus_three += 1,
            _ => bad.push(format!(
                "pair {pairs}: change {change}, matching {matching}"
            )),
        }
    }
    let single = criterion(
        "delta-step",
        &bad,
        format!("{RANDOM_MOVES} moves: {zero} zero, {minus_three} minus three"),
    );

    let mut bad = Vec::new();
    let mut total_moves = 0;
    for s in 0..RANDOM_SEQUENCES {
        let mut board = random_configuration(&mut rng);
        let class = board.delta_class();
        let len = rng.gen_range(0..=MAX_SEQUENCE);
        for _ in 0..len {
            let moves = board.all_legal_moves();
            let Some(mv) = moves.choose(&mut rng) else {
                break;
            };
            board.play(mv).expect("generated moves are legal");
            total_moves += 1;
            if board.delta_class() != class {
                bad.push(format!("sequence {s}"));
                break;
            }
        }
    }
    let sequences = criterion(
        "delta-class",
        &bad,
        format!("{RANDOM_SEQUENCES} sequences, {total_moves} moves"),
    );
    Report {
        suite: Suite::Delta,
        lines: vec![format!("seed {}", cfg.seed)],
        criteria: vec![single, sequences],
    }
}

/// Rectangles: exact minima on small boards, constructive plans up to 12x12,
/// and whole-board scripts up to 6x6.
pub fn rectangles(cfg: SuiteConfig) -> Report {
    let solver = cfg.solver();
    let mut lines = Vec::new();
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 2..=7i64 {
        for m in n..=7 {
            if n * m > 14 {
                continue;
            }
            checked += 1;
            let board = checkerboard(n, m).expect("valid size");
            let got = solver
                .min_stones(&board, Mode::AlternatingEither)
                .map(|s| s.min_stones);
            let want = rect_minimum(n, m);
            lines.push(format!("{n}x{m}: min {got:?} expected {want}"));
            if got != Ok(want) {
                bad.push(format!("{n}x{m}"));
            }
        }
    }
    let optimal = criterion("rect-minima", &bad, format!("{checked} boards optimal"));

    let constructive = rect_plans(2..=12, |_| true);
    let small_boards = rect_plans(2..=6, |tag| tag == CaseTag::Small);
    let mut bad = small_boards.1;
    let mut macros = 0;
    for mac in step_library() {
        let firsts = match mac.written_first() {
            Some(c) => vec![c],
            None => vec![Color::White, Color::Black],
        };
        let tails: &[bool] = if mac.has_final_tail() {
            &[false, true]
        } else {
            &[false]
        };
        for &last in tails {
            macros += 1;
            let mut results = firsts.iter().map(|&f| validate_macro(mac, f, last));
            if let Some(Err(e)) = results
                .find(|r| r.is_ok())
                .or_else(|| firsts.first().map(|&f| validate_macro(mac, f, last)))
            {
                bad.push(e.to_string());
            }
        }
    }
    Report {
        suite: Suite::Rectangles,
        lines,
        criteria: vec![
            optimal,
            criterion(
                "rect-plans",
                &constructive.1,
                format!("{} boards", constructive.0),
            ),
            criterion(
                "small-scripts",
                &bad,
                format!("{} boards, {macros} macro runs", small_boards.0),
            ),
        ],
    }
}

fn rect_plans(
    sizes: std::ops::RangeInclusive<i64>,
    tag_ok: impl Fn(CaseTag) -> bool,
) -> (usize, Vec<String>) {
    let mut bad = Vec::new();
    let mut count = 0;
    for n in sizes.clone() {
        for m in sizes.clone() {
            count += 1;
            let name = format!("{n}x{m}");
            if !classify_case(n, m).is_ok_and(&tag_ok) {
                bad.push(format!("{name}: case"));
                continue;
            }
            let plan = match reduce_rect(n, m) {
                Ok(p) => p,
                Err(e) => {
                    bad.push(format!("{name}: {e}"));
                    continue;
                }
            };
            let start = checkerboard(n, m).expect("valid size");
            match replay(&start, &plan, Validation::Alternating) {
                Err(e) => bad.push(format!("{name}: {e}")),
                Ok((end, _)) => {
                    let want = rect_minimum(n, m);
                    if end.len() != want || (want == 2 && !survivors_separated(&end)) {
                        bad.push(format!("{name}: ends with {} stones", end.len()));
                    }
                }
            }
        }
    }
    (count, bad)
}

/// Outcome of the gadget experiment on one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphVerdict {
    pub graph: GridGraph,
    pub trivial: bool,
    pub hamiltonian: bool,
    pub either: bool,
    pub white_first: bool,
    pub problems: Vec<String>,
}

pub fn graph_verdict(g: &GridGraph, solver: &Solver) -> GraphVerdict {
    let trivial = matches!(pick_anchor(g), Ok(AnchorVerdict::TriviallyNonHamiltonian));
    let mut problems = Vec::new();
    let ham = match ham_brute(g) {
        Ok(h) => h,
        Err(e) => {
            problems.push(e.to_string());
            None
        }
    };
    let (mut either, mut white_first) = (false, false);
    if let Ok(board) = build_gadget(g) {
        match solver.is_one_reducible(&board) {
            Ok((yes, witness)) => {
                either = yes;
                if let Some(plan) = witness.filter(|_| yes) {
                    if let Err(e) = plan_to_circuit(g, &plan) {
                        problems.push(format!("witness: {e}"));
                    }
                }
            }
            Err(e) => problems.push(e.to_string()),
        }
        match solver.min_stones(&board, Mode::AlternatingWhiteFirst) {
            Ok(sol) => white_first = sol.min_stones == 1,
            Err(e) => problems.push(e.to_string()),
        }
        if let Some(circuit) = &ham {
            problems.extend(forward_check(g, &board, circuit));
        }
    }
    if either != ham.is_some() {
        problems.push("verdicts differ".into());
    }
    GraphVerdict {
        graph: g.clone(),
        trivial,
        hamiltonian: ham.is_some(),
        either,
        white_first,
        problems,
    }
}

fn forward_check(
    g: &GridGraph,
    board: &Configuration,
    circuit: &crate::gadget::Circuit,
) -> Vec<String> {
    let n = g.n();
    let mut problems = Vec::new();
    if board.count(Color::White) != n + 1 || board.count(Color::Black) != n + 1 {
        problems.push("census".into());
    }
    let plan = match circuit_to_plan(g, circuit) {
        Ok(p) => p,
        Err(e) => return vec![e.to_string()],
    };
    if plan.len() != 2 * n + 1 {
        problems.push(format!("plan has {} moves", plan.len()));
    }
    match replay(board, &plan, Validation::Alternating) {
        Ok((end, _)) if end.len() == 1 => {}
        Ok((end, _)) => problems.push(format!("plan ends with {} stones", end.len())),
        Err(e) => problems.push(e.to_string()),
    }
    let layout = GadgetLayout::new(g).expect("gadget was built");
    let fuse = layout.fuse();
    if plan
        .moves
        .iter()
        .any(|m| m.mover == Color::White && fuse.contains(&m.from))
    {
        problems.push("white moved a fuse stone".into());
    }
    problems
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Gadget equivalence over all connected graphs of at most six vertices in
/// a 3x3 window.
pub fn gadgets(cfg: SuiteConfig) -> Report {
    let solver = cfg.solver();
    let graphs = window_graphs(3, 6);
    let mut lines = vec!["graph  n  trivial  hamiltonian  either  wfirst".to_string()];
    let mut bad = Vec::new();
    let mut divergent = 0;
    let mut hamiltonian = 0;
    for (i, g) in graphs.iter().enumerate() {
        let v = graph_verdict(g, &solver);
        let cells: Vec<String> = g.vertices().map(|(x, y)| format!("{x},{y}")).collect();
        lines.push(format!(
            "{i:>3}  {}  {:>7}  {:>11}  {:>6}  {:>6}  [{}]",
            g.n(),
            yes_no(v.trivial),
            yes_no(v.hamiltonian),
            yes_no(v.either),
            yes_no(v.white_first),
            cells.join(" ")
        ));
        hamiltonian += usize::from(v.hamiltonian);
        divergent += usize::from(v.either != v.white_first);
        for p in v.problems {
            bad.push(format!("graph {i}: {p}"));
        }
    }
    lines.push(format!(
        "{} graphs, {hamiltonian} hamiltonian, {divergent} differ between either and white-first",
        graphs.len()
    ));
    Report {
        suite: Suite::Gadgets,
        lines,
        criteria: vec![criterion(
            "gadget-equivalence",
            &bad,
            format!("{} graphs agree", graphs.len()),
        )],
    }
}
