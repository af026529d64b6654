//! Game digraphs: the arena every solver operates on.
//!
//! A game is a finite directed graph whose nodes are white or gray plus a
//! start node holding the piece. Moving a piece to a gray node entails the
//! opponent, who must answer in the same component. The four solver theories
//! are distinguished purely by digraph restrictions, captured here as
//! [`TheoryClass`].

use std::fmt;

use thiserror::Error;

use crate::solvers::Assignment;

/// Dense 0-based node index, stable for the lifetime of a digraph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NodeColor {
    White,
    Gray,
}

/// Digraph restriction defining which solver theory applies.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TheoryClass {
    /// Acyclic, no gray nodes.
    Short,
    /// Cycles allowed, no gray nodes.
    Cyclic,
    /// Acyclic, gray nodes with any outdegree.
    Entailing,
    /// Cycles allowed, every gray node has outdegree at most one.
    CarryOn,
}

impl fmt::Display for TheoryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoryClass::Short => write!(f, "short"),
            TheoryClass::Cyclic => write!(f, "cyclic"),
            TheoryClass::Entailing => write!(f, "entailing"),
            TheoryClass::CarryOn => write!(f, "carry"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DigraphError {
    #[error("arc endpoint {0} outside the node set")]
    NodeOutOfRange(NodeId),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unsupported digraph: {0}")]
    Unsupported(String),
}

/// A violated class invariant, reported as data rather than a failure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    CycleForbidden,
    GrayForbidden(NodeId),
    GrayOutDegree(NodeId, usize),
    GraySelfLoop(NodeId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CycleForbidden => write!(f, "cycle found where forbidden"),
            Violation::GrayForbidden(n) => write!(f, "gray node {n} present where forbidden"),
            Violation::GrayOutDegree(n, d) => write!(f, "gray node {n} has outdegree {d}"),
            Violation::GraySelfLoop(n) => write!(f, "gray node {n} has a self-loop"),
        }
    }
}

/// Finite directed graph with white/gray node coloring.
///
/// Immutable once built; all solver operations take it by shared reference.
/// Arc lists are kept sorted and duplicate-free, so option order is always
/// ascending node id.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GameDigraph {
    colors: Vec<NodeColor>,
    succ: Vec<Vec<NodeId>>,
    arc_count: usize,
}

impl GameDigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_colors<I: IntoIterator<Item = NodeColor>>(colors: I) -> Self {
        let colors: Vec<_> = colors.into_iter().collect();
        let succ = vec![Vec::new(); colors.len()];
        GameDigraph { colors, succ, arc_count: 0 }
    }

    pub fn add_node(&mut self, color: NodeColor) -> NodeId {
        self.colors.push(color);
        self.succ.push(Vec::new());
        NodeId(self.colors.len() as u32 - 1)
    }

    /// Adds an arc, collapsing duplicates. Returns false when the arc was
    /// already present.
    pub fn add_arc(&mut self, from: NodeId, to: NodeId) -> Result<bool, DigraphError> {
        for n in [from, to] {
            if n.index() >= self.colors.len() {
                return Err(DigraphError::NodeOutOfRange(n));
            }
        }
        match self.succ[from.index()].binary_search(&to) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.succ[from.index()].insert(pos, to);
                self.arc_count += 1;
                Ok(true)
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.colors.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.colors.len() as u32).map(NodeId)
    }

    pub fn contains(&self, n: NodeId) -> bool {
        n.index() < self.colors.len()
    }

    pub fn color(&self, n: NodeId) -> NodeColor {
        self.colors[n.index()]
    }

    pub fn is_gray(&self, n: NodeId) -> bool {
        self.color(n) == NodeColor::Gray
    }

    pub fn is_white(&self, n: NodeId) -> bool {
        self.color(n) == NodeColor::White
    }

    /// Options of a node in ascending id order.
    pub fn options(&self, n: NodeId) -> &[NodeId] {
        &self.succ[n.index()]
    }

    pub fn out_degree(&self, n: NodeId) -> usize {
        self.succ[n.index()].len()
    }

    pub fn is_terminal(&self, n: NodeId) -> bool {
        self.succ[n.index()].is_empty()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes()
            .flat_map(move |from| self.options(from).iter().map(move |&to| (from, to)))
    }

    /// Predecessor lists, computed on demand.
    pub fn predecessor_lists(&self) -> Vec<Vec<NodeId>> {
        let mut pred = vec![Vec::new(); self.node_count()];
        for (from, to) in self.arcs() {
            pred[to.index()].push(from);
        }
        pred
    }

    /// True when the digraph contains a directed cycle (self-loops included).
    pub fn has_cycle(&self) -> bool {
        // Kahn's algorithm: a cycle exists iff not every node drains.
        let mut indeg = vec![0usize; self.node_count()];
        for (_, to) in self.arcs() {
            indeg[to.index()] += 1;
        }
        let mut stack: Vec<NodeId> =
            self.nodes().filter(|n| indeg[n.index()] == 0).collect();
        let mut seen = 0;
        while let Some(n) = stack.pop() {
            seen += 1;
            for &m in self.options(n) {
                indeg[m.index()] -= 1;
                if indeg[m.index()] == 0 {
                    stack.push(m);
                }
            }
        }
        seen < self.node_count()
    }

    pub fn gray_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes().filter(|&n| self.is_gray(n))
    }

    pub fn has_gray(&self) -> bool {
        self.gray_nodes().next().is_some()
    }

    /// True when every gray node has outdegree at most one and no gray node
    /// carries a self-loop, the shape carry-on solving requires.
    pub fn carry_compatible(&self) -> bool {
        self.gray_nodes().all(|g| {
            self.out_degree(g) <= 1 && !self.options(g).contains(&g)
        })
    }
}

/// Returns every invariant of `class` that `d` violates; empty means ok.
pub fn validate(d: &GameDigraph, class: TheoryClass) -> Vec<Violation> {
    let mut v = Vec::new();
    let forbid_cycles = matches!(class, TheoryClass::Short | TheoryClass::Entailing);
    let forbid_gray = matches!(class, TheoryClass::Short | TheoryClass::Cyclic);
    if forbid_cycles && d.has_cycle() {
        v.push(Violation::CycleForbidden);
    }
    for g in d.gray_nodes() {
        if forbid_gray {
            v.push(Violation::GrayForbidden(g));
        }
        if class == TheoryClass::CarryOn {
            if d.out_degree(g) > 1 {
                v.push(Violation::GrayOutDegree(g, d.out_degree(g)));
            }
            if d.options(g).contains(&g) {
                v.push(Violation::GraySelfLoop(g));
            }
        }
    }
    v
}

/// Most restrictive theory class whose invariants `d` satisfies.
///
/// Cyclic digraphs whose gray nodes have outdegree two or more (or a gray
/// self-loop, which would never terminate the forced response) fit no theory
/// and are rejected.
pub fn classify(d: &GameDigraph) -> Result<TheoryClass, DigraphError> {
    let cyclic = d.has_cycle();
    let gray = d.has_gray();
    match (cyclic, gray) {
        (false, false) => Ok(TheoryClass::Short),
        (true, false) => Ok(TheoryClass::Cyclic),
        (false, true) => Ok(TheoryClass::Entailing),
        (true, true) => {
            if d.carry_compatible() {
                Ok(TheoryClass::CarryOn)
            } else {
                Err(DigraphError::Unsupported(
                    "cyclic digraph with a gray node of outdegree 2 or more (or a gray self-loop)"
                        .into(),
                ))
            }
        }
    }
}

/// A game: a digraph plus the node holding the piece.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Game {
    pub digraph: GameDigraph,
    pub start: NodeId,
}

impl Game {
    pub fn new(digraph: GameDigraph, start: NodeId) -> Result<Self, DigraphError> {
        if !digraph.contains(start) {
            return Err(DigraphError::NodeOutOfRange(start));
        }
        Ok(Game { digraph, start })
    }
}

/// Result of parsing the digraph text format.
#[derive(Clone, Debug)]
pub struct ParsedDigraph {
    pub digraph: GameDigraph,
    pub start: Option<NodeId>,
    /// Non-fatal notes, e.g. collapsed duplicate arcs.
    pub warnings: Vec<String>,
}

/// Parses the line-based digraph format.
///
/// ```text
/// # comment
/// node <id> <white|gray>
/// arc <from> <to>
/// start <id>
/// ```
///
/// Node ids must be dense and declared in order 0, 1, 2, ... so that files
/// are reproducible fixtures. Duplicate arcs are collapsed with a warning.
pub fn parse(text: &str) -> Result<ParsedDigraph, DigraphError> {
    let mut d = GameDigraph::new();
    let mut arcs: Vec<(usize, NodeId, NodeId)> = Vec::new();
    let mut start: Option<NodeId> = None;
    let mut warnings = Vec::new();

    let err = |line: usize, col: usize, msg: String| DigraphError::Parse { line, col, msg };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut words = line.split_whitespace();
        let Some(keyword) = words.next() else { continue };
        let col = raw.find(keyword).unwrap_or(0) + 1;
        let mut next_num = |what: &str| -> Result<u32, DigraphError> {
            let w = words
                .next()
                .ok_or_else(|| err(line_no, col, format!("missing {what}")))?;
            w.parse::<u32>()
                .map_err(|_| err(line_no, col, format!("invalid {what} {w:?}")))
        };
        match keyword {
            "node" => {
                let id = next_num("node id")?;
                let expected = d.node_count() as u32;
                if id != expected {
                    return Err(err(
                        line_no,
                        col,
                        format!("node id {id} out of order, expected {expected}"),
                    ));
                }
                let color = match words.next() {
                    Some("white") => NodeColor::White,
                    Some("gray") => NodeColor::Gray,
                    other => {
                        return Err(err(
                            line_no,
                            col,
                            format!("expected color white|gray, got {other:?}"),
                        ))
                    }
                };
                d.add_node(color);
            }
            "arc" => {
                let from = NodeId(next_num("arc source")?);
                let to = NodeId(next_num("arc target")?);
                arcs.push((line_no, from, to));
            }
            "start" => {
                if start.is_some() {
                    return Err(err(line_no, col, "duplicate start line".into()));
                }
                start = Some(NodeId(next_num("start id")?));
            }
            other => {
                return Err(err(line_no, col, format!("unknown keyword {other:?}")));
            }
        }
        if let Some(extra) = words.next() {
            return Err(err(line_no, col, format!("trailing input {extra:?}")));
        }
    }

    for (line_no, from, to) in arcs {
        match d.add_arc(from, to) {
            Ok(true) => {}
            Ok(false) => warnings.push(format!("line {line_no}: duplicate arc {from} {to} collapsed")),
            Err(DigraphError::NodeOutOfRange(n)) => {
                return Err(err(line_no, 1, format!("arc endpoint {n} not declared")));
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(s) = start {
        if !d.contains(s) {
            return Err(err(0, 0, format!("start node {s} not declared")));
        }
    }
    Ok(ParsedDigraph { digraph: d, start, warnings })
}

/// Canonical text form; `parse(format(d))` reproduces `d`.
pub fn format(d: &GameDigraph, start: Option<NodeId>) -> String {
    let mut out = String::new();
    for n in d.nodes() {
        let color = match d.color(n) {
            NodeColor::White => "white",
            NodeColor::Gray => "gray",
        };
        out.push_str(&format!("node {n} {color}\n"));
    }
    for (from, to) in d.arcs() {
        out.push_str(&format!("arc {from} {to}\n"));
    }
    if let Some(s) = start {
        out.push_str(&format!("start {s}\n"));
    }
    out
}

/// DOT rendering: gray nodes filled, nodes left unassigned by the fixpoint
/// (the cyclic zone) drawn bold, values as a second label line when an
/// assignment is supplied.
pub fn to_dot(d: &GameDigraph, assignment: Option<&Assignment>) -> String {
    let mut out = String::from("digraph game {\n");
    for n in d.nodes() {
        let mut attrs = vec!["shape=circle".to_string()];
        if d.is_gray(n) {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=gray".into());
        }
        let label = match assignment {
            Some(a) => {
                if a.assigned_step(n).is_none() {
                    attrs.push("penwidth=3".into());
                }
                format!("{n}\\n{}", a.value(n))
            }
            None => format!("{n}"),
        };
        attrs.push(format!("label=\"{label}\""));
        out.push_str(&format!("  n{n} [{}];\n", attrs.join(", ")));
    }
    for (from, to) in d.arcs() {
        out.push_str(&format!("  n{from} -> n{to};\n"));
    }
    out.push_str("}\n");
    out
}
