//! Ground-truth machinery, independent of the value algebra.
//!
//! The product construction realizes a two-piece disjunctive sum as a
//! single-piece game, and the retrograde labeling computes outcomes straight
//! from the outcome definition. Consistency checks pit the sum table against
//! these two, which never consult it.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{outcome_of, sum_value};
use crate::digraph::{validate, Game, GameDigraph, NodeColor, NodeId, TheoryClass};
use crate::solvers::{solve_carry, SolveError};
use crate::values::{Outcome, WhiteValue};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("consistency checks need white start nodes")]
    GrayStart,
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Node of a product digraph: one coordinate per factor.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ProductNode {
    pub left: NodeId,
    pub right: NodeId,
}

/// Mapping between product nodes and their coordinates.
#[derive(Clone, Debug, Default)]
pub struct ProductMap {
    pub pairs: Vec<ProductNode>,
    pub index: HashMap<ProductNode, NodeId>,
}

impl ProductMap {
    pub fn node(&self, left: NodeId, right: NodeId) -> Option<NodeId> {
        self.index.get(&ProductNode { left, right }).copied()
    }
}

/// Product digraph realizing the disjunctive sum of two boards.
///
/// Nodes are all coordinate pairs except gray-gray ones (two pieces can
/// never sit on two gray nodes at once). A move changes one coordinate along
/// an arc of its factor while the other coordinate stays on a white node; a
/// piece parked on a gray node pins the turn to that component. A product
/// node is gray when either coordinate is gray.
pub fn cartproduct(v: &GameDigraph, u: &GameDigraph) -> (GameDigraph, ProductMap) {
    let mut d = GameDigraph::new();
    let mut map = ProductMap::default();
    for x in v.nodes() {
        for y in u.nodes() {
            if v.is_gray(x) && u.is_gray(y) {
                continue;
            }
            let color = if v.is_gray(x) || u.is_gray(y) {
                NodeColor::Gray
            } else {
                NodeColor::White
            };
            let id = d.add_node(color);
            let pair = ProductNode { left: x, right: y };
            map.pairs.push(pair);
            map.index.insert(pair, id);
        }
    }
    for (&pair, &id) in &map.index {
        let ProductNode { left: x, right: y } = pair;
        if u.is_white(y) {
            for &x2 in v.options(x) {
                if let Some(t) = map.node(x2, y) {
                    d.add_arc(id, t).unwrap();
                }
            }
        }
        if v.is_white(x) {
            for &y2 in u.options(y) {
                if let Some(t) = map.node(x, y2) {
                    d.add_arc(id, t).unwrap();
                }
            }
        }
    }
    (d, map)
}

/// Outcome of every node by retrograde analysis, straight from the outcome
/// definition: terminals lose for the mover, a node with a losing option
/// wins, a node whose options all win loses, and the residue is drawn.
///
/// Worklist propagation with per-node remaining-option counters, linear in
/// nodes plus arcs. Node color is irrelevant here: with a single piece the
/// mover always moves it.
pub fn retrograde_label(d: &GameDigraph) -> Vec<Outcome> {
    let n = d.node_count();
    let preds = d.predecessor_lists();
    let mut remaining: Vec<usize> = d.nodes().map(|x| d.out_degree(x)).collect();
    let mut label: Vec<Option<Outcome>> = vec![None; n];
    let mut queue: Vec<NodeId> = Vec::new();
    for x in d.nodes() {
        if d.is_terminal(x) {
            label[x.index()] = Some(Outcome::P);
            queue.push(x);
        }
    }
    while let Some(x) = queue.pop() {
        let lx = label[x.index()].unwrap();
        for &p in &preds[x.index()] {
            if label[p.index()].is_some() {
                continue;
            }
            match lx {
                Outcome::P => {
                    label[p.index()] = Some(Outcome::N);
                    queue.push(p);
                }
                Outcome::N => {
                    remaining[p.index()] -= 1;
                    if remaining[p.index()] == 0 {
                        label[p.index()] = Some(Outcome::P);
                        queue.push(p);
                    }
                }
                Outcome::D => unreachable!("draws are never propagated"),
            }
        }
    }
    label.into_iter().map(|l| l.unwrap_or(Outcome::D)).collect()
}

/// Outcome of the game rooted at `start`.
pub fn retrograde_outcome(d: &GameDigraph, start: NodeId) -> Outcome {
    retrograde_label(d)[start.index()]
}

/// One algebra-versus-oracle comparison for a two-component sum.
#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub sum: WhiteValue,
    pub algebra_outcome: Outcome,
    pub oracle_outcome: Outcome,
}

impl ConsistencyReport {
    pub fn consistent(&self) -> bool {
        self.algebra_outcome == self.oracle_outcome
    }
}

/// Solves both games, folds their values through the sum table, and compares
/// the predicted outcome with a retrograde labeling of the product digraph.
/// A mismatch is a report, and a bug.
pub fn check_consistency(v: &Game, u: &Game) -> Result<ConsistencyReport, OracleError> {
    if v.digraph.is_gray(v.start) || u.digraph.is_gray(u.start) {
        return Err(OracleError::GrayStart);
    }
    let av = solve_carry(&v.digraph)?;
    let au = solve_carry(&u.digraph)?;
    let sum = sum_value(
        av.white_value(v.start).expect("white start"),
        au.white_value(u.start).expect("white start"),
    );
    let algebra_outcome = outcome_of(&sum);
    let (prod, map) = cartproduct(&v.digraph, &u.digraph);
    let start = map.node(v.start, u.start).expect("white-white pair exists");
    let oracle_outcome = retrograde_outcome(&prod, start);
    Ok(ConsistencyReport { sum, algebra_outcome, oracle_outcome })
}

/// Deterministic random digraph satisfying the invariants of `theory`.
///
/// Arcs are sampled in fixed index order from a seeded generator, so equal
/// parameters always reproduce the same digraph. Acyclic classes only emit
/// forward arcs; carry-on gray nodes keep at most one outgoing arc and never
/// a self-loop.
pub fn random_digraph(
    n_nodes: usize,
    arc_density: f64,
    gray_fraction: f64,
    theory: TheoryClass,
    seed: u64,
) -> Result<GameDigraph, OracleError> {
    if n_nodes == 0 {
        return Err(OracleError::Parameter("n_nodes must be at least 1".into()));
    }
    for (name, v) in [("arc_density", arc_density), ("gray_fraction", gray_fraction)] {
        if !(0.0..=1.0).contains(&v) || v.is_nan() {
            return Err(OracleError::Parameter(format!("{name} must lie in [0, 1]")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gray_allowed = matches!(theory, TheoryClass::Entailing | TheoryClass::CarryOn);
    let colors: Vec<NodeColor> = (0..n_nodes)
        .map(|_| {
            // Sample unconditionally to keep the stream position independent
            // of the theory.
            let g = rng.gen_bool(gray_fraction.clamp(0.0, 1.0));
            if g && gray_allowed {
                NodeColor::Gray
            } else {
                NodeColor::White
            }
        })
        .collect();
    let mut d = GameDigraph::with_colors(colors);
    let acyclic = matches!(theory, TheoryClass::Short | TheoryClass::Entailing);
    for i in 0..n_nodes as u32 {
        let from = NodeId(i);
        let gray_from = d.is_gray(from);
        let carry_gray = theory == TheoryClass::CarryOn && gray_from;
        for j in 0..n_nodes as u32 {
            let to = NodeId(j);
            if acyclic && j <= i {
                continue;
            }
            if i == j && gray_from {
                continue;
            }
            if !rng.gen_bool(arc_density) {
                continue;
            }
            if carry_gray && d.out_degree(from) >= 1 {
                continue;
            }
            d.add_arc(from, to).unwrap();
        }
    }
    debug_assert!(validate(&d, theory).is_empty());
    Ok(d)
}
