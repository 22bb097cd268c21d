//! Grid graphs, their Clobber gadgets, and certificate translation.
//!
//! Graph coordinates use `y` growing upward. A gadget places a black stone on
//! every vertex, a white bomb above `w`, a white fuse of `n` stones above `v`
//! and a black fire on top of the fuse.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::board::{Color, Configuration, Coord, Move};
use crate::plan::{replay, Plan, ReplayError, Validation};
use crate::text::ParseError;

pub type Vertex = (i64, i64);

/// Largest graph accepted by [`ham_brute`].
pub const HAM_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("top vertex has no left neighbor")]
    AnchorMissing,
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("plan leaves {stones} stones, not 1")]
    NotAOneReduction { stones: usize },
    #[error("bomb left the graph at move {index} (cell {at})")]
    BombLeftGraph { index: usize, at: Coord },
    #[error("bomb captured at move {index}")]
    BombCaptured { index: usize },
    #[error("graph has {n} vertices, limit is {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error(transparent)]
    Replay(#[from] ReplayError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridGraph {
    vertices: BTreeSet<Vertex>,
}

impl GridGraph {
    /// Builds a graph, dropping repeated vertices. Returns the repeats.
    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> (GridGraph, Vec<Vertex>) {
        let mut set = BTreeSet::new();
        let mut dups = Vec::new();
        for v in vertices {
            if !set.insert(v) {
                dups.push(v);
            }
        }
        (GridGraph { vertices: set }, dups)
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(vertices: I) -> GridGraph {
        GridGraph::new(vertices).0
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.iter().copied()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn neighbors(&self, (x, y): Vertex) -> impl Iterator<Item = Vertex> + '_ {
        [(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)]
            .into_iter()
            .filter(|u| self.contains(*u))
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.first() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for w in self.neighbors(u) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.n()
    }

    /// Same shape moved so the smallest coordinates are zero.
    pub fn normalized(&self) -> GridGraph {
        let min_x = self.vertices().map(|v| v.0).min().unwrap_or(0);
        let min_y = self.vertices().map(|v| v.1).min().unwrap_or(0);
        GridGraph::from_vertices(self.vertices().map(|(x, y)| (x - min_x, y - min_y)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anchor {
    pub v: Vertex,
    pub w: Vertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnchorVerdict {
    Anchor(Anchor),
    TriviallyNonHamiltonian,
}

pub fn pick_anchor(g: &GridGraph) -> Result<AnchorVerdict, GadgetError> {
    let v = g
        .vertices()
        .max_by_key(|&(x, y)| (y, x))
        .ok_or(GadgetError::EmptyGraph)?;
    let w = (v.0 - 1, v.1);
    Ok(if g.contains(w) {
        AnchorVerdict::Anchor(Anchor { v, w })
    } else {
        AnchorVerdict::TriviallyNonHamiltonian
    })
}

fn anchor_of(g: &GridGraph) -> Result<Anchor, GadgetError> {
    match pick_anchor(g)? {
        AnchorVerdict::Anchor(a) => Ok(a),
        AnchorVerdict::TriviallyNonHamiltonian => Err(GadgetError::AnchorMissing),
    }
}

/// Graph-to-board coordinate map of a gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetLayout {
    pub anchor: Anchor,
    pub n: usize,
    top_y: i64,
    min_x: i64,
}

impl GadgetLayout {
    pub fn new(g: &GridGraph) -> Result<GadgetLayout, GadgetError> {
        let anchor = anchor_of(g)?;
        let n = g.n();
        let min_x = g.vertices().map(|v| v.0).min().unwrap_or(0);
        Ok(GadgetLayout {
            anchor,
            n,
            top_y: anchor.v.1 + n as i64 + 1,
            min_x,
        })
    }

    pub fn to_board(&self, (x, y): Vertex) -> Coord {
        Coord::new((self.top_y - y) as i32, (x - self.min_x) as i32)
    }

    pub fn to_graph(&self, c: Coord) -> Vertex {
        (c.col as i64 + self.min_x, self.top_y - c.row as i64)
    }

    /// Black squares sit where `x + y` is even.
    pub fn parity_anchor(&self) -> u8 {
        (self.top_y - self.min_x).rem_euclid(2) as u8
    }

    pub fn bomb(&self) -> Coord {
        let (x, y) = self.anchor.w;
        self.to_board((x, y + 1))
    }

    /// Fuse cells from just above `v` upward.
    pub fn fuse(&self) -> Vec<Coord> {
        let (x, y) = self.anchor.v;
        (1..=self.n as i64)
            .map(|k| self.to_board((x, y + k)))
            .collect()
    }

    pub fn fire(&self) -> Coord {
        let (x, y) = self.anchor.v;
        self.to_board((x, y + self.n as i64 + 1))
    }
}

pub fn build_gadget(g: &GridGraph) -> Result<Configuration, GadgetError> {
    let layout = GadgetLayout::new(g)?;
    let mut cfg = Configuration::new(layout.parity_anchor());
    for v in g.vertices() {
        cfg.insert(layout.to_board(v), Color::Black);
    }
    cfg.insert(layout.bomb(), Color::White);
    for c in layout.fuse() {
        cfg.insert(c, Color::White);
    }
    cfg.insert(layout.fire(), Color::Black);
    Ok(cfg)
}

/// Vertices of a closed walk that visits each vertex once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit(pub Vec<Vertex>);

impl Circuit {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, g: &GridGraph) -> Result<(), GadgetError> {
        let bad = |msg: String| Err(GadgetError::InvalidCircuit(msg));
        let anchor = anchor_of(g)
            .map_err(|_| GadgetError::InvalidCircuit("graph has no anchor edge".into()))?;
        let c = &self.0;
        if c.len() != g.n() {
            return bad(format!(
                "length {} but the graph has {} vertices",
                c.len(),
                g.n()
            ));
        }
        let distinct: HashSet<_> = c.iter().collect();
        if distinct.len() != c.len() {
            return bad("a vertex repeats".into());
        }
        if let Some(v) = c.iter().find(|v| !g.contains(**v)) {
            return bad(format!("{v:?} is not a vertex"));
        }
        let mut uses_anchor = false;
        for i in 0..c.len() {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            if (a.0 - b.0).abs() + (a.1 - b.1).abs() != 1 {
                return bad(format!("{a:?} and {b:?} are not adjacent"));
            }
            let pair = (a, b);
            uses_anchor |= pair == (anchor.v, anchor.w) || pair == (anchor.w, anchor.v);
        }
        if !uses_anchor {
            return bad("edge (v, w) is not used".into());
        }
        Ok(())
    }

    /// The walk starting at `w` and ending at `v`.
    fn walk_w_to_v(&self, anchor: Anchor) -> Vec<Vertex> {
        let start = self.0.iter().position(|&u| u == anchor.w).unwrap_or(0);
        let mut walk: Vec<Vertex> = self.0[start..]
            .iter()
            .chain(&self.0[..start])
            .copied()
            .collect();
        if walk.last() != Some(&anchor.v) {
            walk[1..].reverse();
        }
        walk
    }

    /// Representative of the circuit up to rotation and reflection.
    pub fn canonical(&self) -> Circuit {
        let Some(start) = (0..self.0.len()).min_by_key(|&i| self.0[i]) else {
            return self.clone();
        };
        let mut walk: Vec<Vertex> = self.0[start..]
            .iter()
            .chain(&self.0[..start])
            .copied()
            .collect();
        if walk.len() > 2 && walk[walk.len() - 1] < walk[1] {
            walk[1..].reverse();
        }
        Circuit(walk)
    }
}

/// Bomb walks the circuit from `w` to `v` while the fire burns down the fuse,
/// then the bomb takes the fire.
pub fn circuit_to_plan(g: &GridGraph, c: &Circuit) -> Result<Plan, GadgetError> {
    c.validate(g)?;
    let layout = GadgetLayout::new(g)?;
    let walk = c.walk_w_to_v(layout.anchor);
    let mut fuse = layout.fuse();
    let mut bomb = layout.bomb();
    let mut fire = layout.fire();
    let mut plan = Plan::new(Color::White, format!("circuit-to-plan n={}", g.n()));
    for v in walk {
        let to = layout.to_board(v);
        plan.moves.push(Move::new(Color::White, bomb, to));
        bomb = to;
        let next = fuse.pop().expect("fuse has n stones");
        plan.moves.push(Move::new(Color::Black, fire, next));
        fire = next;
    }
    plan.moves.push(Move::new(Color::White, bomb, fire));
    Ok(plan)
}

/// Reads the bomb's path off a one-stone witness of the gadget.
pub fn plan_to_circuit(g: &GridGraph, plan: &Plan) -> Result<Circuit, GadgetError> {
    let layout = GadgetLayout::new(g)?;
    let start = build_gadget(g)?;
    let (end, _) = replay(&start, plan, Validation::LegalOnly)?;
    if end.len() != 1 {
        return Err(GadgetError::NotAOneReduction { stones: end.len() });
    }
    let mut bomb = layout.bomb();
    let mut path = Vec::new();
    let last = plan.moves.len().saturating_sub(1);
    for (index, m) in plan.moves.iter().enumerate() {
        if m.to == bomb {
            return Err(GadgetError::BombCaptured { index });
        }
        if m.from != bomb {
            continue;
        }
        bomb = m.to;
        let v = layout.to_graph(bomb);
        if g.contains(v) {
            path.push(v);
        } else if index != last {
            return Err(GadgetError::BombLeftGraph { index, at: bomb });
        }
    }
    let circuit = Circuit(path);
    circuit.validate(g)?;
    Ok(circuit)
}

/// Backtracking search for a circuit through the anchor edge.
pub fn ham_brute(g: &GridGraph) -> Result<Option<Circuit>, GadgetError> {
    if g.n() > HAM_LIMIT {
        return Err(GadgetError::LimitExceeded {
            n: g.n(),
            limit: HAM_LIMIT,
        });
    }
    let anchor = match pick_anchor(g)? {
        AnchorVerdict::Anchor(a) => a,
        AnchorVerdict::TriviallyNonHamiltonian => return Ok(None),
    };
    if g.n() == 2 {
        return Ok(Some(Circuit(vec![anchor.w, anchor.v])));
    }
    if g.n() % 2 == 1 {
        return Ok(None);
    }
    let index: BTreeMap<Vertex, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let verts: Vec<Vertex> = g.vertices().collect();
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|&u| g.neighbors(u).map(|w| index[&w]).collect())
        .collect();
    let mut path = vec![index[&anchor.w]];
    let mut used = 1u32 << index[&anchor.w];
    let goal = index[&anchor.v];
    if extend(&adj, goal, g.n(), &mut path, &mut used) {
        Ok(Some(Circuit(path.into_iter().map(|i| verts[i]).collect())))
    } else {
        Ok(None)
    }
}

fn extend(
    adj: &[Vec<usize>],
    goal: usize,
    n: usize,
    path: &mut Vec<usize>,
    used: &mut u32,
) -> bool {
    let here = *path.last().expect("path starts at w");
    if path.len() == n {
        return here == goal;
    }
    for &next in &adj[here] {
        if *used & 1 << next != 0 || (next == goal && path.len() + 1 != n) {
            continue;
        }
        path.push(next);
        *used |= 1 << next;
        if extend(adj, goal, n, path, used) {
            return true;
        }
        *used &= !(1 << next);
        path.pop();
    }
    false
}

/// Connected graphs of up to `max_n` vertices inside a `side x side`
/// window, one per translation class, ordered by size then vertices.
pub fn window_graphs(side: i64, max_n: usize) -> Vec<GridGraph> {
    let cells: Vec<Vertex> = (0..side)
        .flat_map(|y| (0..side).map(move |x| (x, y)))
        .collect();
    let mut found = BTreeSet::new();
    for mask in 1u64..1 << cells.len() {
        if mask.count_ones() as usize > max_n {
            continue;
        }
        let g = GridGraph::from_vertices(
            cells
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v),
        );
        if g.is_connected() {
            found.insert((g.n(), g.normalized()));
        }
    }
    found.into_iter().map(|(_, g)| g).collect()
}

fn parse_vertices(text: &str) -> Result<Vec<Vertex>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let nums: Vec<&str> = body.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(ParseError::new(i + 1, 1, "expected two integers `x y`"));
        }
        let parse = |k: usize| {
            nums[k].parse::<i64>().map_err(|_| {
                let col = line.find(nums[k]).unwrap_or(0) + 1;
                ParseError::new(i + 1, col, format!("bad integer {:?}", nums[k]))
            })
        };
        out.push((parse(0)?, parse(1)?));
    }
    Ok(out)
}

/// Parses a graph file. Repeated vertices are dropped and returned.
pub fn parse_graph(text: &str) -> Result<(GridGraph, Vec<Vertex>), ParseError> {
    Ok(GridGraph::new(parse_vertices(text)?))
}

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    parse_vertices(text).map(Circuit)
}

fn format_vertices<'a>(header: &str, vs: impl Iterator<Item = &'a Vertex>) -> String {
    let mut s = format!("# {header}\n");
    for (x, y) in vs {
        let _ = writeln!(s, "{x} {y}");
    }
    s
}

pub fn format_graph(g: &GridGraph) -> String {
    format_vertices(&format!("grid graph n={}", g.n()), g.vertices.iter())
}

pub fn format_circuit(c: &Circuit) -> String {
    format_vertices(&format!("circuit n={}", c.len()), c.0.iter())
}
