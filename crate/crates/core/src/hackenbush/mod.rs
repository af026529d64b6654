//! Green-lime hackenbush: ground-rooted drawings with green and lime edges.
//!
//! A move removes an edge or toggles colors. After a removal anything no
//! longer connected to the ground falls away; removing a green edge that
//! drops at least one lime edge is a carry-on move, so the mover plays
//! again. A toggle recolors a lime edge green while recoloring an adjacent
//! green edge lime, removing nothing. Positions compile into carry-on game
//! digraphs and are solved with the unified solver.

mod compile;

pub use compile::{
    analyze_sum, compile_to_digraph, solve_position, CompiledGame, CompiledNode, HbAdvice,
    HbLineStep, DEFAULT_POSITION_CAP,
};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::solvers::SolveError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HbError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("edge {0} is not connected to the ground")]
    Disconnected(u32),
    #[error("edge id {0} declared twice")]
    DuplicateEdge(u32),
    #[error("state space exceeded the cap of {0} positions")]
    CapExceeded(usize),
    #[error("a sum needs at least one component")]
    EmptySum,
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum EdgeColor {
    Green,
    Lime,
}

impl fmt::Display for EdgeColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeColor::Green => write!(f, "green"),
            EdgeColor::Lime => write!(f, "lime"),
        }
    }
}

/// One edge of a drawing. Parallel edges are allowed and distinguished by id.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HbEdge {
    pub id: u32,
    pub a: u32,
    pub b: u32,
    pub color: EdgeColor,
}

impl HbEdge {
    pub fn touches(&self, node: u32) -> bool {
        self.a == node || self.b == node
    }

    /// Whether two distinct edges share an endpoint.
    pub fn adjacent(&self, other: &HbEdge) -> bool {
        self.touches(other.a) || self.touches(other.b)
    }
}

/// A ground-rooted multigraph with colored edges.
///
/// Invariant: every edge lies on a path to the ground. Positions reached by
/// play keep edge ids from the original drawing, so a position is identified
/// by its surviving (id, color) pairs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HbPosition {
    ground: u32,
    edges: Vec<HbEdge>,
}

/// Canonical identity of a position: surviving edge ids with their colors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PositionKey(Vec<(u32, EdgeColor)>);

/// One move: remove an edge, or toggle a lime edge with an adjacent green
/// edge.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HbMove {
    Remove(u32),
    Toggle { lime: u32, green: u32 },
}

impl fmt::Display for HbMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HbMove::Remove(e) => write!(f, "remove {e}"),
            HbMove::Toggle { lime, green } => write!(f, "toggle {lime} with {green}"),
        }
    }
}

impl HbPosition {
    /// Builds a position, checking that every edge connects to the ground.
    pub fn new(ground: u32, edges: Vec<HbEdge>) -> Result<Self, HbError> {
        let mut seen = BTreeSet::new();
        for e in &edges {
            if !seen.insert(e.id) {
                return Err(HbError::DuplicateEdge(e.id));
            }
        }
        let mut edges = edges;
        edges.sort_by_key(|e| e.id);
        let p = HbPosition { ground, edges };
        let reachable = p.ground_component();
        for e in &p.edges {
            if !reachable.contains(&e.a) && !reachable.contains(&e.b) {
                return Err(HbError::Disconnected(e.id));
            }
        }
        Ok(p)
    }

    pub fn ground(&self) -> u32 {
        self.ground
    }

    pub fn edges(&self) -> &[HbEdge] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge(&self, id: u32) -> Option<&HbEdge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn key(&self) -> PositionKey {
        PositionKey(self.edges.iter().map(|e| (e.id, e.color)).collect())
    }

    fn ground_component(&self) -> BTreeSet<u32> {
        let mut adj: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for e in &self.edges {
            adj.entry(e.a).or_default().push(e.b);
            adj.entry(e.b).or_default().push(e.a);
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.ground);
        queue.push_back(self.ground);
        while let Some(n) = queue.pop_front() {
            for &m in adj.get(&n).into_iter().flatten() {
                if seen.insert(m) {
                    queue.push_back(m);
                }
            }
        }
        seen
    }

    /// Deletes one edge, then drops everything no longer connected to the
    /// ground. Returns the surviving position and the fallen edge ids (the
    /// deleted edge itself is not listed as fallen).
    pub fn remove_and_fall(&self, id: u32) -> (HbPosition, Vec<u32>) {
        let remaining: Vec<HbEdge> =
            self.edges.iter().copied().filter(|e| e.id != id).collect();
        let interim = HbPosition { ground: self.ground, edges: remaining };
        fall_away(&interim)
    }

    /// All legal moves with their results, in a fixed order: removals by
    /// edge id, then toggles by (lime id, green id). The flag marks
    /// carry-on moves: a green removal that dropped at least one lime edge.
    pub fn legal_moves(&self) -> Vec<(HbMove, HbPosition, bool)> {
        let mut out = Vec::new();
        for e in &self.edges {
            let (next, fallen) = self.remove_and_fall(e.id);
            let dropped_lime = fallen
                .iter()
                .any(|id| self.edge(*id).map(|f| f.color) == Some(EdgeColor::Lime));
            let carry = e.color == EdgeColor::Green && dropped_lime;
            out.push((HbMove::Remove(e.id), next, carry));
        }
        for lime in self.edges.iter().filter(|e| e.color == EdgeColor::Lime) {
            for green in self.edges.iter().filter(|e| e.color == EdgeColor::Green) {
                if !lime.adjacent(green) {
                    continue;
                }
                let mut edges = self.edges.clone();
                for e in &mut edges {
                    if e.id == lime.id {
                        e.color = EdgeColor::Green;
                    } else if e.id == green.id {
                        e.color = EdgeColor::Lime;
                    }
                }
                out.push((
                    HbMove::Toggle { lime: lime.id, green: green.id },
                    HbPosition { ground: self.ground, edges },
                    false,
                ));
            }
        }
        out
    }
}

/// Keeps exactly the edges still connected to the ground; the rest fall.
pub fn fall_away(p: &HbPosition) -> (HbPosition, Vec<u32>) {
    let reachable = p.ground_component();
    let (kept, fallen): (Vec<HbEdge>, Vec<HbEdge>) = p
        .edges
        .iter()
        .copied()
        .partition(|e| reachable.contains(&e.a) || reachable.contains(&e.b));
    (
        HbPosition { ground: p.ground, edges: kept },
        fallen.into_iter().map(|e| e.id).collect(),
    )
}

/// Parses the position file format:
///
/// ```text
/// ground <id>
/// node <id>
/// edge <id> <u> <v> <green|lime>
/// ```
pub fn parse_position(text: &str) -> Result<HbPosition, HbError> {
    let mut ground: Option<u32> = None;
    let mut edges: Vec<HbEdge> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut words = line.split_whitespace();
        let Some(keyword) = words.next() else { continue };
        let err = |msg: String| HbError::Parse { line: line_no, msg };
        let mut num = |what: &str| -> Result<u32, HbError> {
            words
                .next()
                .ok_or_else(|| err(format!("missing {what}")))?
                .parse::<u32>()
                .map_err(|e| err(format!("invalid {what}: {e}")))
        };
        match keyword {
            "ground" => {
                if ground.is_some() {
                    return Err(err("duplicate ground line".into()));
                }
                ground = Some(num("ground id")?);
            }
            "node" => {
                // Nodes are implied by edges; declared ids are accepted for
                // readability.
                num("node id")?;
            }
            "edge" => {
                let id = num("edge id")?;
                let a = num("endpoint")?;
                let b = num("endpoint")?;
                let color = match words.next() {
                    Some("green") => EdgeColor::Green,
                    Some("lime") => EdgeColor::Lime,
                    other => return Err(err(format!("expected green|lime, got {other:?}"))),
                };
                edges.push(HbEdge { id, a, b, color });
            }
            other => return Err(err(format!("unknown keyword {other:?}"))),
        }
    }
    let ground = ground.ok_or(HbError::Parse { line: 0, msg: "missing ground line".into() })?;
    HbPosition::new(ground, edges)
}

/// Canonical text form of a position.
pub fn format_position(p: &HbPosition) -> String {
    let mut out = format!("ground {}\n", p.ground());
    let mut nodes: BTreeSet<u32> = BTreeSet::new();
    for e in p.edges() {
        nodes.insert(e.a);
        nodes.insert(e.b);
    }
    nodes.remove(&p.ground());
    for n in nodes {
        out.push_str(&format!("node {n}\n"));
    }
    for e in p.edges() {
        out.push_str(&format!("edge {} {} {} {}\n", e.id, e.a, e.b, e.color));
    }
    out
}

/// Builders for the drawings used throughout the tests.
pub mod shapes {
    use super::{EdgeColor, HbEdge, HbPosition};

    /// A vertical stalk: edge `i` joins node `i` to node `i+1`, node 0 is
    /// the ground, colors bottom to top.
    pub fn stalk(colors: &[EdgeColor]) -> HbPosition {
        let edges = colors
            .iter()
            .enumerate()
            .map(|(i, &color)| HbEdge { id: i as u32, a: i as u32, b: i as u32 + 1, color })
            .collect();
        HbPosition::new(0, edges).expect("stalks are connected")
    }

    /// A glass: stem from the ground to node 1, two arms from node 1.
    pub fn glass(stem: EdgeColor, left: EdgeColor, right: EdgeColor) -> HbPosition {
        HbPosition::new(
            0,
            vec![
                HbEdge { id: 0, a: 0, b: 1, color: stem },
                HbEdge { id: 1, a: 1, b: 2, color: left },
                HbEdge { id: 2, a: 1, b: 3, color: right },
            ],
        )
        .expect("glasses are connected")
    }

    /// A full glass: a glass with a fourth edge joining the arm tops.
    pub fn full_glass(
        stem: EdgeColor,
        left: EdgeColor,
        right: EdgeColor,
        rim: EdgeColor,
    ) -> HbPosition {
        HbPosition::new(
            0,
            vec![
                HbEdge { id: 0, a: 0, b: 1, color: stem },
                HbEdge { id: 1, a: 1, b: 2, color: left },
                HbEdge { id: 2, a: 1, b: 3, color: right },
                HbEdge { id: 3, a: 2, b: 3, color: rim },
            ],
        )
        .expect("full glasses are connected")
    }
}
