mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clobber_core::gadget::{build_gadget, circuit_to_plan, ham_brute, window_graphs, GridGraph};
use clobber_core::linear::{line_bound, reduce_line};
use clobber_core::rect::{classify_case, reduce_rect, step_library, validate_macro, CaseTag};
use clobber_core::solver::DEFAULT_LIMIT;
use clobber_core::{
    checkerboard, cli, psi_line, Color, Configuration, Coord, Mode, Solver, SolverConfig,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every criterion is exact.
const TOLERANCE: usize = 0;

const LINE_TABLE: [usize; 12] = [1, 1, 2, 1, 2, 2, 3, 2, 3, 3, 4, 3];
const LINE_PLAN_MAX: i64 = 64;
const RANDOM_PAIRS: usize = 10_000;
const RANDOM_SEQUENCES: usize = 1_000;
const SEQUENCE_MAX: usize = 20;
const SEED: u64 = 0;
const OPTIMAL_AREA_MAX: i64 = 14;
const PLAN_SIDE_MAX: i64 = 12;
const SMALL_SIDE_MAX: i64 = 6;
const WINDOW: i64 = 3;
const WINDOW_VERTICES: usize = 6;
const JOBS: [usize; 2] = [1, 4];

const BUDGET_LINE_MINIMA: Duration = Duration::from_secs(10);
const BUDGET_LINE_PLANS: Duration = Duration::from_secs(5);
const BUDGET_DELTA: Duration = Duration::from_secs(30);
const BUDGET_RECT_MINIMA: Duration = Duration::from_secs(300);
const BUDGET_RECT_PLANS: Duration = Duration::from_secs(30);
const BUDGET_SMALL: Duration = Duration::from_secs(5);
const BUDGET_GADGETS: Duration = Duration::from_secs(600);

struct Outcome {
    errors: Vec<String>,
    detail: String,
}

fn solver(jobs: usize) -> Solver {
    Solver::new(SolverConfig {
        limit: DEFAULT_LIMIT,
        jobs,
    })
}

fn line_minima() -> Outcome {
    let mut errors = Vec::new();
    for (i, &want) in LINE_TABLE.iter().enumerate() {
        let n = i as i64 + 1;
        let line = psi_line(n).unwrap();
        let mut got = vec![line_bound(n).unwrap()];
        for mode in [
            Mode::AlternatingWhiteFirst,
            Mode::AlternatingBlackFirst,
            Mode::FreeOrder,
        ] {
            got.push(solver(1).min_stones(&line, mode).unwrap().min_stones);
        }
        let cells = common::cells(&line);
        got.push(common::min_alternating(&cells, true, 1));
        got.push(common::min_alternating(&cells, false, 1));
        got.push(common::min_free(&cells));
        if got.iter().any(|&g| g.abs_diff(want) > TOLERANCE) {
            errors.push(format!("n={n}: {got:?} vs {want}"));
        }
    }
    Outcome {
        errors,
        detail: format!("n=1..{}, three modes plus oracle", LINE_TABLE.len()),
    }
}

fn line_plans() -> Outcome {
    let mut errors = Vec::new();
    for n in 1..=LINE_PLAN_MAX {
        for first in [Color::White, Color::Black] {
            let plan = reduce_line(n, first).unwrap();
            let start = common::cells(&psi_line(n).unwrap());
            match common::play(&start, &plan, true) {
                Ok(end) if end.len().abs_diff(line_bound(n).unwrap()) > TOLERANCE => {
                    errors.push(format!("n={n} {first}: {} stones", end.len()))
                }
                Ok(_) => {}
                Err(i) => errors.push(format!("n={n} {first}: move {i} rejected")),
            }
        }
    }
    Outcome {
        errors,
        detail: format!("n=1..{LINE_PLAN_MAX}, both first movers"),
    }
}

fn random_board(rng: &mut ChaCha8Rng) -> (Configuration, i32) {
    let anchor = rng.gen_range(0..2);
    let mut cfg = Configuration::new(anchor as u8);
    for r in 0..5 {
        for c in 0..5 {
            if rng.gen_bool(0.7) {
                let color = if rng.gen_bool(0.5) {
                    Color::White
                } else {
                    Color::Black
                };
                cfg.insert(Coord::new(r, c), color);
            }
        }
    }
    (cfg, anchor)
}

fn delta_invariant() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut errors = Vec::new();
    let mut pairs = 0;
    while pairs < RANDOM_PAIRS {
        let (cfg, anchor) = random_board(&mut rng);
        let Some(mv) = cfg.all_legal_moves().choose(&mut rng).copied() else {
            continue;
        };
        pairs += 1;
        let before = common::cells(&cfg);
        let white_square = (mv.from.row + mv.from.col).rem_euclid(2) != anchor;
        let matching = (mv.mover == Color::White) == white_square;
        let after = cfg.apply_move(&mv).unwrap();
        let change = common::delta(&common::cells(&after), anchor) as i64
            - common::delta(&before, anchor) as i64;
        let want = if matching { 0 } else { -3 };
        if change != want || after.delta() != common::delta(&common::cells(&after), anchor) {
            errors.push(format!("pair {pairs}: change {change}"));
        }
    }
    for s in 0..RANDOM_SEQUENCES {
        let (mut cfg, anchor) = random_board(&mut rng);
        let class = common::delta(&common::cells(&cfg), anchor) % 3;
        for _ in 0..rng.gen_range(0..=SEQUENCE_MAX) {
            let Some(mv) = cfg.all_legal_moves().choose(&mut rng).copied() else {
                break;
            };
            cfg.play(&mv).unwrap();
            if common::delta(&common::cells(&cfg), anchor) % 3 != class {
                errors.push(format!("sequence {s}"));
                break;
            }
        }
    }
    Outcome {
        errors,
        detail: format!("{RANDOM_PAIRS} moves, {RANDOM_SEQUENCES} sequences, seed {SEED}"),
    }
}

fn expected_rect(n: i64, m: i64) -> usize {
    if n * m % 3 == 0 {
        2
    } else {
        1
    }
}

fn rect_minima() -> Outcome {
    let mut errors = Vec::new();
    let mut boards = 0;
    for n in 2..=OPTIMAL_AREA_MAX {
        for m in n..=OPTIMAL_AREA_MAX {
            if n * m > OPTIMAL_AREA_MAX {
                continue;
            }
            boards += 1;
            let board = checkerboard(n, m).unwrap();
            let want = expected_rect(n, m);
            let got = solver(1)
                .min_stones(&board, Mode::AlternatingEither)
                .unwrap()
                .min_stones;
            let cells = common::grid(n as i32, m as i32);
            let oracle = common::min_alternating(&cells, true, 1)
                .min(common::min_alternating(&cells, false, 1));
            if got.abs_diff(want) > TOLERANCE || oracle != want {
                errors.push(format!(
                    "{n}x{m}: solver {got}, oracle {oracle}, want {want}"
                ));
            }
        }
    }
    Outcome {
        errors,
        detail: format!("{boards} boards with area <= {OPTIMAL_AREA_MAX}"),
    }
}

fn separated(end: &common::Cells) -> bool {
    let cells: Vec<(i32, i32)> = end.keys().copied().collect();
    let [a, b] = cells[..] else {
        return false;
    };
    (a.0 == b.0 && (a.1 - b.1).abs() == 2) || (a.1 == b.1 && (a.0 - b.0).abs() == 2)
}

fn check_rect(n: i64, m: i64, errors: &mut Vec<String>) {
    let plan = match reduce_rect(n, m) {
        Ok(p) => p,
        Err(e) => return errors.push(format!("{n}x{m}: {e}")),
    };
    let want = expected_rect(n, m);
    match common::play(&common::grid(n as i32, m as i32), &plan, true) {
        Err(i) => errors.push(format!("{n}x{m}: move {i} rejected")),
        Ok(end) if end.len().abs_diff(want) > TOLERANCE => {
            errors.push(format!("{n}x{m}: {} stones", end.len()))
        }
        Ok(end) if want == 2 && !separated(&end) => errors.push(format!("{n}x{m}: not separated")),
        Ok(_) => {}
    }
}

fn rect_plans() -> Outcome {
    let mut errors = Vec::new();
    for n in 2..=PLAN_SIDE_MAX {
        for m in 2..=PLAN_SIDE_MAX {
            check_rect(n, m, &mut errors);
        }
    }
    Outcome {
        errors,
        detail: format!("all boards 2..={PLAN_SIDE_MAX} per side"),
    }
}

fn small_boards() -> Outcome {
    let mut errors = Vec::new();
    for n in 2..=SMALL_SIDE_MAX {
        for m in 2..=SMALL_SIDE_MAX {
            if classify_case(n, m).unwrap() != CaseTag::Small {
                errors.push(format!("{n}x{m}: not handled by whole-board scripts"));
            }
            check_rect(n, m, &mut errors);
        }
    }
    let mut runs = 0;
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
            runs += 1;
            if !firsts.iter().any(|&f| validate_macro(mac, f, last).is_ok()) {
                errors.push(format!("macro {} (tail {last})", mac.id));
            }
        }
    }
    Outcome {
        errors,
        detail: format!("boards 2..={SMALL_SIDE_MAX} per side, {runs} macro replays"),
    }
}

/// Hamiltonian circuit by trying every vertex order.
fn hamiltonian_oracle(g: &GridGraph) -> bool {
    let vs: Vec<(i64, i64)> = g.vertices().collect();
    let step = |a: (i64, i64), b: (i64, i64)| (a.0 - b.0).abs() + (a.1 - b.1).abs() == 1;
    if vs.len() == 2 {
        return vs[0].1 == vs[1].1;
    }
    if vs.len() < 4 {
        return false;
    }
    fn permute(
        vs: &[(i64, i64)],
        k: usize,
        order: &mut Vec<usize>,
        ok: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if k == vs.len() {
            return ok(order);
        }
        for i in k..vs.len() {
            order.swap(k, i);
            if permute(vs, k + 1, order, ok) {
                return true;
            }
            order.swap(k, i);
        }
        false
    }
    let closed = |order: &[usize]| {
        (0..order.len()).all(|i| step(vs[order[i]], vs[order[(i + 1) % order.len()]]))
    };
    let mut order: Vec<usize> = (0..vs.len()).collect();
    permute(&vs, 1, &mut order, &closed)
}

fn gadgets() -> Outcome {
    let mut errors = Vec::new();
    let graphs = window_graphs(WINDOW, WINDOW_VERTICES);
    let mut hamiltonian = 0;
    for (i, g) in graphs.iter().enumerate() {
        let ham = ham_brute(g).unwrap();
        if ham.is_some() != hamiltonian_oracle(g) {
            errors.push(format!("graph {i}: brute force disagrees with oracle"));
        }
        let reducible = match build_gadget(g) {
            Ok(board) => solver(1).is_one_reducible(&board).unwrap().0,
            Err(_) => false,
        };
        if reducible != ham.is_some() {
            errors.push(format!("graph {i}: reducible {reducible}"));
        }
        let Some(circuit) = ham else { continue };
        hamiltonian += 1;
        let n = g.n();
        let board = build_gadget(g).unwrap();
        if board.count(Color::White) != n + 1 || board.count(Color::Black) != n + 1 {
            errors.push(format!("graph {i}: census"));
        }
        let plan = circuit_to_plan(g, &circuit).unwrap();
        if plan.len() != 2 * n + 1 {
            errors.push(format!("graph {i}: {} moves", plan.len()));
        }
        match common::play(&common::cells(&board), &plan, true) {
            Ok(end) if end.len() == 1 => {}
            Ok(end) => errors.push(format!("graph {i}: {} stones", end.len())),
            Err(m) => errors.push(format!("graph {i}: move {m} rejected")),
        }
    }
    Outcome {
        errors,
        detail: format!("{} graphs, {hamiltonian} hamiltonian", graphs.len()),
    }
}

fn determinism() -> Outcome {
    let mut outputs = Vec::new();
    let mut errors = Vec::new();
    for jobs in JOBS {
        let args = [
            "clobber",
            "suite",
            "all",
            "--seed",
            "0",
            "--jobs",
            &jobs.to_string(),
        ]
        .map(String::from);
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = cli::run(args, &mut out, &mut err);
        if code != cli::EXIT_OK {
            errors.push(format!("jobs {jobs}: exit {code}"));
        }
        outputs.push(out);
    }
    if outputs.windows(2).any(|w| w[0] != w[1]) {
        errors.push("reports differ".into());
    }
    Outcome {
        errors,
        detail: format!(
            "suite reports with jobs {JOBS:?}, {} bytes",
            outputs[0].len()
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 8] = [
        ("line minima", BUDGET_LINE_MINIMA, line_minima),
        ("line plans", BUDGET_LINE_PLANS, line_plans),
        ("delta invariant", BUDGET_DELTA, delta_invariant),
        ("rectangle minima", BUDGET_RECT_MINIMA, rect_minima),
        ("rectangle plans", BUDGET_RECT_PLANS, rect_plans),
        ("whole-board scripts", BUDGET_SMALL, small_boards),
        ("gadget equivalence", BUDGET_GADGETS, gadgets),
        ("determinism", Duration::MAX, determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let took = start.elapsed();
        if took > budget {
            outcome
                .errors
                .push(format!("took {took:?}, budget {budget:?}"));
        }
        let verdict = if outcome.errors.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "criterion {} {name}: {verdict} ({}; {:.2}s)",
            i + 1,
            outcome.detail,
            took.as_secs_f64()
        );
        for e in &outcome.errors {
            println!("    {e}");
        }
        failed += usize::from(!outcome.errors.is_empty());
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
