mod common;

use clobber_core::board::square_color;
use clobber_core::gadget::{
    build_gadget, circuit_to_plan, ham_brute, pick_anchor, plan_to_circuit, Anchor, AnchorVerdict,
    GadgetError, GadgetLayout, GridGraph,
};
use clobber_core::linear::{block_moves, block_survivors, line_bound, reduce_line};
use clobber_core::rect::{
    classify_case, rect_minimum, reduce_rect, solve_waypoint_gap, step_library,
    survivors_separated, CaseTag, GapError,
};
use clobber_core::solver::{is_one_reducible, lower_bound, min_stones};
use clobber_core::text::{parse_board, parse_plan};
use clobber_core::{
    checkerboard, psi_line, replay, Color, Configuration, Coord, Mode, Move, Plan, ReplayError,
    Validation,
};

fn block(w: i64, h: i64) -> GridGraph {
    GridGraph::from_vertices((0..w).flat_map(|x| (0..h).map(move |y| (x, y))))
}

#[test]
fn square_colors() {
    assert_eq!(square_color(Coord::new(0, 0), 0), Color::Black);
    assert_eq!(square_color(Coord::new(0, 1), 0), Color::White);
    assert_eq!(square_color(Coord::new(2, 2), 0), Color::Black);
}

#[test]
fn delta_values() {
    assert_eq!(psi_line(4).unwrap().delta(), 4);
    let lone = Configuration::from_stones(0, [(Coord::new(0, 0), Color::White)]);
    assert_eq!(lone.delta(), 2);
    assert_eq!(checkerboard(3, 3).unwrap().delta(), 9);
    for n in 1..6 {
        for m in 1..6 {
            assert_eq!(checkerboard(n, m).unwrap().delta(), (n * m) as usize);
        }
    }
}

#[test]
fn legal_move_lists() {
    let moves = psi_line(2).unwrap().legal_moves(Color::White);
    assert_eq!(
        moves,
        vec![Move::new(Color::White, Coord::new(0, 1), Coord::new(0, 0))]
    );
    let lone = Configuration::from_stones(0, [(Coord::new(0, 0), Color::Black)]);
    assert!(lone.legal_moves(Color::White).is_empty());
    assert!(lone.legal_moves(Color::Black).is_empty());
    let square = checkerboard(2, 2).unwrap();
    assert_eq!(square.legal_moves(Color::White).len(), 4);
    let oracle_count: usize = [0i32, 1]
        .iter()
        .flat_map(|&r| [0i32, 1].map(|c| (r, c)))
        .filter(|&(r, c)| (r + c) % 2 == 1)
        .map(|(r, c)| {
            [(r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)]
                .iter()
                .filter(|&&(a, b)| (0..2).contains(&a) && (0..2).contains(&b))
                .count()
        })
        .sum();
    assert_eq!(oracle_count, 4);
}

#[test]
fn applying_moves() {
    let mut line = psi_line(2).unwrap();
    line.play(&Move::new(Color::White, Coord::new(0, 1), Coord::new(0, 0)))
        .unwrap();
    assert_eq!(line.get(Coord::new(0, 0)), Some(Color::White));
    assert_eq!(line.square_color(Coord::new(0, 0)), Color::Black);
    assert_eq!(line.delta(), 2);
    let three = psi_line(3).unwrap();
    assert!(three
        .apply_move(&Move::new(Color::Black, Coord::new(0, 1), Coord::new(0, 0)))
        .is_err());
}

#[test]
fn board_files() {
    let cfg = parse_board("BW\nWB").unwrap();
    assert_eq!(cfg, checkerboard(2, 2).unwrap());
    assert_eq!(cfg.parity_anchor(), 0);
    let err = parse_board("BX").unwrap_err();
    assert_eq!((err.line, err.column), (1, 2));
    let glyphs: String = psi_line(4)
        .unwrap()
        .stones()
        .map(|(_, c)| c.glyph())
        .collect();
    assert_eq!(glyphs, "BWBW");
}

#[test]
fn components() {
    let apart = Configuration::from_stones(
        0,
        [
            (Coord::new(0, 0), Color::Black),
            (Coord::new(0, 2), Color::White),
        ],
    );
    assert_eq!(apart.connected_components().len(), 2);
    assert_eq!(psi_line(5).unwrap().connected_components().len(), 1);
}

#[test]
fn replay_examples() {
    let square = checkerboard(2, 2).unwrap();
    let plan = reduce_rect(2, 2).unwrap();
    assert_eq!(plan.len(), 3);
    let (end, report) = replay(&square, &plan, Validation::Alternating).unwrap();
    assert_eq!((end.len(), report.final_stones), (1, 1));
    let (same, _) = replay(
        &square,
        &Plan::new(Color::White, ""),
        Validation::Alternating,
    )
    .unwrap();
    assert_eq!(same, square);
    let twice = parse_plan("W 0 1 0 0\nW 1 0 1 1\n").unwrap();
    let err = replay(&square, &twice, Validation::Alternating).unwrap_err();
    assert!(matches!(err, ReplayError::NotAlternating { index: 1, .. }));
}

#[test]
fn line_examples() {
    assert_eq!([4, 7, 11].map(|n| line_bound(n).unwrap()), [1, 3, 4]);
    let p = reduce_line(2, Color::White).unwrap();
    assert_eq!(p.len(), 1);
    let p = reduce_line(4, Color::Black).unwrap();
    let end = common::play(&common::cells(&psi_line(4).unwrap()), &p, true).unwrap();
    assert_eq!((p.len(), end.len()), (3, 1));
    for first in [Color::White, Color::Black] {
        let p = reduce_line(12, first).unwrap();
        let end = common::play(&common::cells(&psi_line(12).unwrap()), &p, true).unwrap();
        assert_eq!((p.len(), end.len()), (9, 3));
    }
}

/// The per-block tables reach the fewest stones an exhaustive search finds
/// for the same block and first mover.
#[test]
fn block_tables_are_optimal() {
    for len in 1..=4usize {
        for first in [Color::White, Color::Black] {
            let line = psi_line(len as i64).unwrap();
            let moves = block_moves(len, first);
            let mut mover = first;
            let mut plan = Plan::new(first, "block");
            for &(from, to) in moves {
                plan.moves.push(Move::new(
                    mover,
                    Coord::new(0, from as i32),
                    Coord::new(0, to as i32),
                ));
                mover = mover.opposite();
            }
            let end = common::play(&common::cells(&line), &plan, true).unwrap();
            let best = common::min_alternating(&common::cells(&line), first == Color::White, 1);
            assert_eq!(end.len(), best, "len {len} {first}");
            assert_eq!(block_survivors(len), best);
        }
    }
}

#[test]
fn rectangle_examples() {
    assert_eq!(classify_case(4, 4).unwrap(), CaseTag::Small);
    assert_eq!(classify_case(8, 8).unwrap(), CaseTag::EE);
    assert_eq!(classify_case(3, 8).unwrap(), CaseTag::OERotated);
    assert_eq!(classify_case(3, 9).unwrap(), CaseTag::OO);
    assert!(classify_case(1, 5).is_err());
    assert_eq!(rect_minimum(3, 4), 2);
    assert_eq!(rect_minimum(4, 8), 1);

    let p = reduce_rect(3, 3).unwrap();
    let (end, _) = replay(&checkerboard(3, 3).unwrap(), &p, Validation::Alternating).unwrap();
    assert_eq!(p.len(), 7);
    assert!(survivors_separated(&end));

    let p = reduce_rect(4, 8).unwrap();
    let end = common::play(&common::grid(4, 8), &p, true).unwrap();
    assert_eq!(end.len(), 1);
    assert!(p.metadata.contains("case=EE"));
}

#[test]
fn macro_shapes() {
    let lib = step_library();
    let get = |id: &str| lib.iter().find(|m| m.id == id).unwrap();
    let pretrim = get("ee.pretrim");
    let runs: Vec<_> = pretrim.runs.iter().map(|r| (r.first, r.written)).collect();
    assert_eq!(runs, [(Some(Color::White), 3), (Some(Color::Black), 3)]);
    let trim3 = get("eo.trim3");
    let before = trim3.pre_pattern();
    let after = trim3.post_pattern(false);
    let width = |p: &clobber_core::rect::Pattern| p.left_width() + p.right_width();
    let occupied_cols = |p: &clobber_core::rect::Pattern| {
        let cols = |cells: &Vec<Vec<Option<Color>>>| {
            (0..cells[0].len())
                .filter(|&c| cells.iter().any(|r| r[c].is_some()))
                .count()
        };
        cols(&p.left) + p.right.as_ref().map_or(0, cols)
    };
    assert_eq!(width(before), width(after));
    assert_eq!(occupied_cols(before) - occupied_cols(after), 4);
    let two = get("app.2x2");
    assert_eq!(two.runs.iter().map(|r| r.written).sum::<usize>(), 3);
}

#[test]
fn gap_examples() {
    let square = checkerboard(2, 2).unwrap();
    assert_eq!(
        solve_waypoint_gap(&square, &square, Color::White, 0).unwrap(),
        vec![]
    );
    let end = parse_board("..\nW.").unwrap();
    let moves = solve_waypoint_gap(&square, &end, Color::White, 3).unwrap();
    assert_eq!(moves.len(), 3);
    assert!(matches!(
        solve_waypoint_gap(&square, &end, Color::White, 1),
        Err(GapError::NoConnectingSequence { .. })
    ));
}

#[test]
fn solver_examples() {
    assert_eq!(lower_bound(&psi_line(3).unwrap()).unwrap(), 2);
    let lone = Configuration::from_stones(0, [(Coord::new(0, 0), Color::White)]);
    assert_eq!(lower_bound(&lone).unwrap(), 1);
    let pair = Configuration::from_stones(
        0,
        [
            (Coord::new(0, 0), Color::White),
            (Coord::new(0, 1), Color::White),
        ],
    );
    assert_eq!(lower_bound(&pair).unwrap(), 2);

    assert_eq!(
        min_stones(&psi_line(5).unwrap(), Mode::AlternatingEither)
            .unwrap()
            .min_stones,
        2
    );
    assert_eq!(
        min_stones(&psi_line(7).unwrap(), Mode::FreeOrder)
            .unwrap()
            .min_stones,
        3
    );
    let sq = min_stones(&checkerboard(2, 2).unwrap(), Mode::AlternatingWhiteFirst).unwrap();
    assert_eq!(sq.min_stones, 1);

    assert_eq!(
        is_one_reducible(&psi_line(3).unwrap()).unwrap(),
        (false, None)
    );
    let (yes, plan) = is_one_reducible(&lone).unwrap();
    assert!(yes && plan.unwrap().is_empty());
    assert!(!is_one_reducible(&checkerboard(3, 4).unwrap()).unwrap().0);
}

#[test]
fn anchor_examples() {
    assert_eq!(
        pick_anchor(&block(3, 2)).unwrap(),
        AnchorVerdict::Anchor(Anchor {
            v: (2, 1),
            w: (1, 1)
        })
    );
    assert_eq!(
        pick_anchor(&block(1, 1)).unwrap(),
        AnchorVerdict::TriviallyNonHamiltonian
    );
    assert_eq!(
        pick_anchor(&block(1, 2)).unwrap(),
        AnchorVerdict::TriviallyNonHamiltonian
    );
}

#[test]
fn gadget_examples() {
    let g = block(3, 2);
    let board = build_gadget(&g).unwrap();
    assert_eq!(board.len(), 14);
    assert_eq!(
        (board.count(Color::White), board.count(Color::Black)),
        (7, 7)
    );
    assert_eq!(board.connected_components().len(), 1);
    assert_eq!(build_gadget(&block(2, 2)).unwrap().len(), 10);

    let layout = GadgetLayout::new(&g).unwrap();
    let above = |(x, y): (i64, i64)| (x, y + 1);
    assert!(!g.contains(above(layout.anchor.v)));
    assert!(!g.contains(above(layout.anchor.w)));
}

#[test]
fn circuit_examples() {
    for (g, moves) in [(block(2, 2), 9), (block(3, 2), 13), (block(2, 3), 13)] {
        let c = ham_brute(&g).unwrap().unwrap();
        let plan = circuit_to_plan(&g, &c).unwrap();
        let board = build_gadget(&g).unwrap();
        let end = common::play(&common::cells(&board), &plan, true).unwrap();
        assert_eq!((plan.len(), end.len()), (moves, 1));
        assert_eq!(plan.len(), board.len() - 1);
        assert_eq!(
            plan_to_circuit(&g, &plan).unwrap().canonical(),
            c.canonical()
        );
    }
}

#[test]
fn solver_witness_gives_a_circuit() {
    let g = block(2, 2);
    let (yes, plan) = is_one_reducible(&build_gadget(&g).unwrap()).unwrap();
    assert!(yes);
    let c = plan_to_circuit(&g, &plan.unwrap()).unwrap();
    assert_eq!(c.len(), 4);
    assert!(c.validate(&g).is_ok());
}

#[test]
fn two_stone_plan_is_not_a_witness() {
    let g = block(2, 2);
    let mut plan = circuit_to_plan(&g, &ham_brute(&g).unwrap().unwrap()).unwrap();
    plan.moves.pop();
    assert_eq!(
        plan_to_circuit(&g, &plan),
        Err(GadgetError::NotAOneReduction { stones: 2 })
    );
}

#[test]
fn hamiltonicity_examples() {
    assert!(ham_brute(&block(3, 2)).unwrap().is_some());
    assert!(ham_brute(&block(3, 1)).unwrap().is_none());
    for g in [block(3, 3), block(1, 3), block(5, 1)] {
        assert!(ham_brute(&g).unwrap().is_none());
    }
}
