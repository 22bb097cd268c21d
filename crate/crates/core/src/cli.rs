//! The `clobber` command line.
//!
//! Exit codes: 0 success, 1 negative verdict or failed verification, 2 usage
//! or I/O error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::board::{checkerboard, psi_line, Color, Configuration};
use crate::gadget::{
    build_gadget, circuit_to_plan, format_circuit, parse_circuit, parse_graph, plan_to_circuit,
    GadgetError, GridGraph,
};
use crate::linear::reduce_line;
use crate::plan::{replay, Plan, Validation};
use crate::rect::reduce_rect;
use crate::solver::{Mode, Solver, SolverConfig, SolverError, DEFAULT_LIMIT};
use crate::suite::{Suite, SuiteConfig};
use crate::text::{format_board, format_plan, parse_board, parse_plan};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const LIMIT_ENV: &str = "CLOBBER_LIMIT";

#[derive(Debug, Parser)]
#[command(name = "clobber", version, about = "Solitaire Clobber workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mover {
    W,
    B,
}

impl From<Mover> for Color {
    fn from(m: Mover) -> Color {
        match m {
            Mover::W => Color::White,
            Mover::B => Color::Black,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Wfirst,
    Bfirst,
    Either,
    Free,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Wfirst => Mode::AlternatingWhiteFirst,
            ModeArg::Bfirst => Mode::AlternatingBlackFirst,
            ModeArg::Either => Mode::AlternatingEither,
            ModeArg::Free => Mode::FreeOrder,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    #[value(name = "table1")]
    Lines,
    #[value(name = "thm3")]
    Delta,
    #[value(name = "thm4")]
    Rectangles,
    #[value(name = "npc")]
    Gadgets,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Block-split plan for the one-row line of length N.
    ReduceLine {
        n: i64,
        #[arg(long, value_enum, default_value = "w")]
        first: Mover,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Step-macro plan for the N x M checkerboard.
    ReduceRect {
        n: i64,
        m: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact minimum number of stones.
    Minimize {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Falls back to CLOBBER_LIMIT, then 16.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Stone count, clashing count and delta.
    Delta { file: PathBuf },
    /// Replays a plan on a board.
    VerifyPlan {
        board: PathBuf,
        plan: PathBuf,
        #[arg(long)]
        alternating: bool,
    },
    /// Gadget configuration of a grid graph.
    Gadget {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One-stone plan of a gadget from a Hamiltonian circuit.
    Ham2plan {
        graph: PathBuf,
        circuit: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hamiltonian circuit from a one-stone plan of a gadget.
    Plan2ham {
        graph: PathBuf,
        plan: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a reproduction suite and prints its report.
    Suite {
        #[arg(value_enum)]
        name: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

enum Failure {
    No(String),
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_board(path: &Path) -> Result<Configuration, Failure> {
    parse_board(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_plan(path: &Path) -> Result<Plan, Failure> {
    parse_plan(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path, err: &mut dyn Write) -> Result<GridGraph, Failure> {
    let (g, dups) =
        parse_graph(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    for (x, y) in dups {
        let _ = writeln!(err, "warning: duplicate vertex {x} {y} ignored");
    }
    Ok(g)
}

fn gadget_failure(e: GadgetError) -> Failure {
    match e {
        GadgetError::EmptyGraph | GadgetError::LimitExceeded { .. } => usage(e),
        other => Failure::No(other.to_string()),
    }
}

fn io(e: std::io::Error) -> Failure {
    usage(e)
}

/// Prints the plan with its final stone count, and writes it to `out` if
/// given.
fn emit_plan(
    start: &Configuration,
    plan: &Plan,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Outcome {
    let text = format_plan(plan);
    let (end, _) =
        replay(start, plan, Validation::Alternating).map_err(|e| Failure::No(e.to_string()))?;
    if let Some(path) = out {
        write_file(path, &text)?;
    }
    write!(stdout, "{text}").map_err(io)?;
    writeln!(stdout, "final stones: {}", end.len()).map_err(io)
}

fn resolve_limit(limit: Option<usize>) -> Result<usize, Failure> {
    if let Some(k) = limit {
        return Ok(k);
    }
    match std::env::var(LIMIT_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{LIMIT_ENV}={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_LIMIT),
    }
}

fn execute(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    match cmd {
        Command::ReduceLine { n, first, out } => {
            let plan = reduce_line(n, first.into()).map_err(usage)?;
            emit_plan(&psi_line(n).map_err(usage)?, &plan, out.as_deref(), stdout)
        }
        Command::ReduceRect { n, m, out } => {
            let plan = reduce_rect(n, m).map_err(usage)?;
            emit_plan(
                &checkerboard(n, m).map_err(usage)?,
                &plan,
                out.as_deref(),
                stdout,
            )
        }
        Command::Minimize {
            file,
            mode,
            limit,
            witness,
            jobs,
        } => {
            let board = load_board(&file)?;
            let limit = resolve_limit(limit)?;
            let solver = Solver::new(SolverConfig {
                limit,
                jobs: jobs.max(1),
            });
            let mode: Mode = mode.into();
            let sol = solver.min_stones(&board, mode).map_err(|e| match e {
                SolverError::LimitExceeded { .. } | SolverError::EmptyConfiguration => usage(e),
            })?;
            writeln!(stdout, "mode: {}", mode.name()).map_err(io)?;
            writeln!(stdout, "min stones: {}", sol.min_stones).map_err(io)?;
            writeln!(stdout, "witness moves: {}", sol.witness.len()).map_err(io)?;
            if let Some(path) = witness {
                write_file(&path, &format_plan(&sol.witness))?;
            }
            Ok(())
        }
        Command::Delta { file } => {
            let board = load_board(&file)?;
            writeln!(stdout, "stones: {}", board.len()).map_err(io)?;
            writeln!(stdout, "clashing: {}", board.clashing_count()).map_err(io)?;
            writeln!(stdout, "delta: {}", board.delta()).map_err(io)?;
            writeln!(stdout, "delta mod 3: {}", board.delta_class()).map_err(io)
        }
        Command::VerifyPlan {
            board,
            plan,
            alternating,
        } => {
            let start = load_board(&board)?;
            let plan = load_plan(&plan)?;
            let validation = if alternating {
                Validation::Alternating
            } else {
                Validation::LegalOnly
            };
            match replay(&start, &plan, validation) {
                Ok((_, report)) => writeln!(stdout, "{report}").map_err(io),
                Err(e) => Err(Failure::No(format!(
                    "verification failed at move {}: {e}",
                    e.index()
                ))),
            }
        }
        Command::Gadget { graph, out } => {
            let g = load_graph(&graph, stderr)?;
            let board = build_gadget(&g).map_err(gadget_failure)?;
            let text = format_board(&board);
            match out {
                Some(path) => write_file(&path, &text),
                None => write!(stdout, "{text}").map_err(io),
            }
        }
        Command::Ham2plan {
            graph,
            circuit,
            out,
        } => {
            let g = load_graph(&graph, stderr)?;
            let c = parse_circuit(&read(&circuit)?)
                .map_err(|e| usage(format!("{}: {e}", circuit.display())))?;
            let plan = circuit_to_plan(&g, &c).map_err(gadget_failure)?;
            let start = build_gadget(&g).map_err(gadget_failure)?;
            emit_plan(&start, &plan, out.as_deref(), stdout)
        }
        Command::Plan2ham { graph, plan, out } => {
            let g = load_graph(&graph, stderr)?;
            let plan = load_plan(&plan)?;
            let c = plan_to_circuit(&g, &plan).map_err(gadget_failure)?;
            let text = format_circuit(&c);
            if let Some(path) = out {
                write_file(&path, &text)?;
            }
            write!(stdout, "{text}").map_err(io)
        }
        Command::Suite { name, seed, jobs } => {
            let suites: Vec<Suite> = match name {
                SuiteArg::Lines => vec![Suite::Lines],
                SuiteArg::Delta => vec![Suite::Delta],
                SuiteArg::Rectangles => vec![Suite::Rectangles],
                SuiteArg::Gadgets => vec![Suite::Gadgets],
                SuiteArg::All => Suite::ALL.to_vec(),
            };
            let cfg = SuiteConfig {
                seed,
                jobs: jobs.max(1),
            };
            let mut passed = true;
            for s in suites {
                let report = s.run(cfg);
                passed &= report.passed();
                write!(stdout, "{report}").map_err(io)?;
            }
            if passed {
                Ok(())
            } else {
                Err(Failure::No("suite failed".into()))
            }
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(Failure::No(msg)) => {
            let _ = writeln!(stderr, "{msg}");
            EXIT_NO
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}
