//! Disjunctive-sum value arithmetic, value-to-outcome maps, and winning-move
//! recommendation for multi-piece positions.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::digraph::{Game, NodeId};
use crate::solvers::Assignment;
use crate::values::{GrayValue, NatSet, Outcome, WhiteValue};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("a sum position needs at least one component")]
    EmptyPosition,
    #[error("component {0} starts on a gray node; sum values are defined for white starts")]
    GrayStart(usize),
    #[error("component {component} has no node {node}")]
    BadNode { component: usize, node: NodeId },
    #[error("illegal line step {0}: {1}")]
    BadLine(usize, String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Value of a two-component disjunctive sum, by the five-by-five table.
///
/// Full moons absorb. Two infinities make a bare infinity. Otherwise the
/// severity order infinity > moon > nymphet > integer decides the shape, and
/// the adorns combine by elementwise xor.
pub fn sum_value(g: &WhiteValue, h: &WhiteValue) -> WhiteValue {
    use WhiteValue::*;
    let xor_sets = |a: &NatSet, b: &NatSet| {
        a.xor_sets(b).expect("sum adorns are finite sets")
    };
    match (g, h) {
        (FullMoon, _) | (_, FullMoon) => FullMoon,
        (Inf(_), Inf(_)) => Inf(NatSet::empty()),
        (Inf(d), Moon(f)) | (Moon(f), Inf(d)) => Inf(xor_sets(d, f)),
        (Inf(d), Nym(f)) | (Nym(f), Inf(d)) => Inf(d.xor_with(*f)),
        (Inf(d), Finite(n)) | (Finite(n), Inf(d)) => Inf(d.xor_with(*n)),
        (Moon(f), Moon(f2)) => Moon(xor_sets(f, f2)),
        (Moon(f), Nym(v)) | (Nym(v), Moon(f)) => Moon(f.xor_with(*v)),
        (Moon(f), Finite(n)) | (Finite(n), Moon(f)) => Moon(f.xor_with(*n)),
        (Nym(a), Nym(b)) => Nym(a ^ b),
        (Nym(a), Finite(n)) | (Finite(n), Nym(a)) => Nym(a ^ n),
        (Finite(a), Finite(b)) => Finite(a ^ b),
    }
}

/// Outcome of a single game from its value.
///
/// The previous player wins exactly at 0. Lunar values, positive integers,
/// infinities with a 0 exit, and nymphets other than 0 win for the next
/// player. Infinities without a 0 exit and the nymphet 0 are drawn.
pub fn outcome_of(v: &WhiteValue) -> Outcome {
    match v {
        WhiteValue::Finite(0) => Outcome::P,
        WhiteValue::Finite(_) => Outcome::N,
        WhiteValue::Moon(_) | WhiteValue::FullMoon => Outcome::N,
        WhiteValue::Nym(0) => Outcome::D,
        WhiteValue::Nym(_) => Outcome::N,
        WhiteValue::Inf(d) if d.contains(0) => Outcome::N,
        WhiteValue::Inf(_) => Outcome::D,
    }
}

/// Fate of the player entailed at a gray node when the rest of the sum is
/// the nim value `k`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EntailedVerdict {
    Win,
    Loss,
    TiePossible,
}

/// Verdict for the player who has to answer at a gray node, against `*k`.
///
/// A cover set protects whoever moved in, so the entailed player loses on
/// members and wins elsewhere. New moons lose outright, gray full moons win
/// outright, and cyclic gray nodes admit ties.
pub fn gray_presence_verdict(c: &GrayValue, k: u32) -> EntailedVerdict {
    match c {
        GrayValue::NewMoon => EntailedVerdict::Loss,
        GrayValue::FullMoon => EntailedVerdict::Win,
        GrayValue::Cover(s) if s.contains(k) => EntailedVerdict::Loss,
        GrayValue::Cover(_) => EntailedVerdict::Win,
        GrayValue::CyclicGray => EntailedVerdict::TiePossible,
    }
}

/// A multi-piece position: one solved game per piece.
#[derive(Clone, Debug)]
pub struct SumPosition {
    components: Vec<(Game, Assignment)>,
}

impl SumPosition {
    pub fn new(components: Vec<(Game, Assignment)>) -> Result<Self, AlgebraError> {
        if components.is_empty() {
            return Err(AlgebraError::EmptyPosition);
        }
        Ok(SumPosition { components })
    }

    pub fn components(&self) -> &[(Game, Assignment)] {
        &self.components
    }

    fn start_values(&self) -> Result<Vec<&WhiteValue>, AlgebraError> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, (g, a))| {
                a.white_value(g.start).ok_or(AlgebraError::GrayStart(i))
            })
            .collect()
    }

    fn value_at(&self, nodes: &[NodeId]) -> Option<WhiteValue> {
        let mut acc: Option<WhiteValue> = None;
        for (i, (_, a)) in self.components.iter().enumerate() {
            let v = a.white_value(nodes[i])?;
            acc = Some(match acc {
                None => v.clone(),
                Some(prev) => sum_value(&prev, v),
            });
        }
        acc
    }
}

/// Value of the whole position: left fold of the sum table over components.
pub fn position_value(p: &SumPosition) -> Result<WhiteValue, AlgebraError> {
    let vals = p.start_values()?;
    let mut acc = vals[0].clone();
    for v in &vals[1..] {
        acc = sum_value(&acc, v);
    }
    Ok(acc)
}

pub fn position_outcome(p: &SumPosition) -> Result<Outcome, AlgebraError> {
    Ok(outcome_of(&position_value(p)?))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Win,
    Draw,
    Loss,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Win => write!(f, "win"),
            Verdict::Draw => write!(f, "draw"),
            Verdict::Loss => write!(f, "loss"),
        }
    }
}

/// One arc of a recommended line. Forced steps are the entailed replies and
/// continuations inside a carry-on chain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LineStep {
    pub component: usize,
    pub from: NodeId,
    pub to: NodeId,
    pub forced: bool,
}

impl fmt::Display for LineStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "component#{}: {}->{}", self.component + 1, self.from, self.to)?;
        if self.forced {
            write!(f, " (forced)")?;
        }
        Ok(())
    }
}

/// Move recommendation with the concrete line realizing it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MoveAdvice {
    pub verdict: Verdict,
    pub line: Vec<LineStep>,
    pub rationale: String,
}

/// What one mover turn (a move plus any forced chain) can end in.
enum TurnEnd {
    /// Opponent to move at an all-white state.
    OpponentAt(Vec<NodeId>, Vec<LineStep>),
    /// Mover to move again at an all-white state.
    MoverAt(Vec<NodeId>, Vec<LineStep>),
    /// Opponent entailed at a terminal gray node: immediate mover win.
    OpponentStuck(Vec<LineStep>),
    /// The forced chain never leaves the gray nodes: infinite run.
    ForcedLoop(Vec<LineStep>),
    /// Mover entailed at a terminal gray node, or chain malformed: useless.
    Dead,
}

/// Follows one atomic move of component `i` to `target`, resolving any
/// forced chain behind a gray landing.
fn play_move(p: &SumPosition, state: &[NodeId], i: usize, target: NodeId) -> TurnEnd {
    let d = &p.components[i].0.digraph;
    let mut line = vec![LineStep { component: i, from: state[i], to: target, forced: false }];
    if d.is_white(target) {
        let mut next = state.to_vec();
        next[i] = target;
        return TurnEnd::OpponentAt(next, line);
    }
    // Forced chain: hops alternate opponent, mover, opponent, ...
    let mut cur = target;
    let mut mover_hops = false;
    let mut hops = 0usize;
    loop {
        if d.is_terminal(cur) {
            return if mover_hops {
                TurnEnd::Dead
            } else {
                TurnEnd::OpponentStuck(line)
            };
        }
        if hops > d.node_count() {
            return TurnEnd::ForcedLoop(line);
        }
        let next_node = d.options(cur)[0];
        line.push(LineStep { component: i, from: cur, to: next_node, forced: true });
        hops += 1;
        if d.is_white(next_node) {
            let mut next = state.to_vec();
            next[i] = next_node;
            return if mover_hops {
                // The mover made the last forced hop onto white: the turn
                // passes to the opponent.
                TurnEnd::OpponentAt(next, line)
            } else {
                TurnEnd::MoverAt(next, line)
            };
        }
        cur = next_node;
        mover_hops = !mover_hops;
    }
}

/// Searches one mover turn (with continuations after carry-ons) that hands
/// the opponent a position of outcome `target`.
fn search_line(
    p: &SumPosition,
    state: &[NodeId],
    target: Outcome,
    visited: &mut HashSet<Vec<NodeId>>,
) -> Option<Vec<LineStep>> {
    if !visited.insert(state.to_vec()) {
        return None;
    }
    for i in 0..p.components.len() {
        let d = &p.components[i].0.digraph;
        for &y in d.options(state[i]) {
            match play_move(p, state, i, y) {
                TurnEnd::OpponentAt(next, line) => {
                    let Some(v) = p.value_at(&next) else { continue };
                    if outcome_of(&v) == target {
                        return Some(line);
                    }
                }
                TurnEnd::MoverAt(next, line) => {
                    let Some(v) = p.value_at(&next) else { continue };
                    let continuable = match target {
                        Outcome::P => outcome_of(&v) == Outcome::N,
                        Outcome::D => outcome_of(&v) == Outcome::D,
                        Outcome::N => false,
                    };
                    if !continuable {
                        continue;
                    }
                    if let Some(rest) = search_line(p, &next, target, visited) {
                        let mut full = line;
                        full.extend(rest);
                        return Some(full);
                    }
                }
                TurnEnd::OpponentStuck(line) => {
                    if target == Outcome::P {
                        return Some(line);
                    }
                }
                TurnEnd::ForcedLoop(line) => {
                    if target == Outcome::D {
                        return Some(line);
                    }
                }
                TurnEnd::Dead => {}
            }
        }
    }
    None
}

/// Recommends a move for the player to act on a sum of solved components.
///
/// On a winning position the line realizes the win: it walks the mover's
/// moves and every forced reply until the turn passes to the opponent in a
/// previous-player-win position. On a drawn position the line hands the
/// opponent a drawn position. On a lost position any legal move is reported.
pub fn best_move(p: &SumPosition) -> Result<MoveAdvice, AlgebraError> {
    let outcome = position_outcome(p)?;
    let state: Vec<NodeId> = p.components.iter().map(|(g, _)| g.start).collect();
    match outcome {
        Outcome::N => {
            let line = search_line(p, &state, Outcome::P, &mut HashSet::new())
                .ok_or_else(|| {
                    AlgebraError::Internal("winning position without a winning line".into())
                })?;
            let end = replay(p, &line)?;
            let rationale = match end.value {
                Some(v) => format!("opponent is left with value {v}"),
                None => "opponent is entailed with no reply".into(),
            };
            Ok(MoveAdvice { verdict: Verdict::Win, line, rationale })
        }
        Outcome::D => {
            let line = search_line(p, &state, Outcome::D, &mut HashSet::new())
                .ok_or_else(|| {
                    AlgebraError::Internal("drawn position without a value-preserving move".into())
                })?;
            let rationale = "keeps the position drawn".to_string();
            Ok(MoveAdvice { verdict: Verdict::Draw, line, rationale })
        }
        Outcome::P => {
            let line = (0..p.components.len())
                .find_map(|i| {
                    let d = &p.components[i].0.digraph;
                    d.options(state[i]).first().map(|&y| {
                        vec![LineStep { component: i, from: state[i], to: y, forced: false }]
                    })
                })
                .unwrap_or_default();
            let rationale = if line.is_empty() {
                "no move available".to_string()
            } else {
                "every move loses".to_string()
            };
            Ok(MoveAdvice { verdict: Verdict::Loss, line, rationale })
        }
    }
}

/// Final state of a replayed line.
#[derive(Clone, Debug)]
pub struct ReplayEnd {
    /// Node per component after the line.
    pub nodes: Vec<NodeId>,
    /// Sum value at the end, when every piece rests on a white node.
    pub value: Option<WhiteValue>,
    /// True when the opponent is to move after the line.
    pub opponent_to_move: bool,
}

/// Replays a line from the start position, validating every step: arcs must
/// exist, entailed replies must be marked forced and stay in the entailed
/// component, and players must alternate correctly around gray nodes.
pub fn replay(p: &SumPosition, line: &[LineStep]) -> Result<ReplayEnd, AlgebraError> {
    let mut nodes: Vec<NodeId> = p.components.iter().map(|(g, _)| g.start).collect();
    // Component owed a forced reply after a move onto a gray node. Players
    // strictly alternate, so step parity identifies the mover throughout.
    let mut pending_reply: Option<usize> = None;
    for (idx, step) in line.iter().enumerate() {
        let bad = |msg: String| AlgebraError::BadLine(idx, msg);
        if step.component >= nodes.len() {
            return Err(bad(format!("no component {}", step.component)));
        }
        let d = &p.components[step.component].0.digraph;
        if nodes[step.component] != step.from {
            return Err(bad(format!(
                "component {} is at {}, not {}",
                step.component, nodes[step.component], step.from
            )));
        }
        if !d.options(step.from).contains(&step.to) {
            return Err(bad(format!("no arc {}->{}", step.from, step.to)));
        }
        match pending_reply {
            Some(comp) => {
                if !step.forced || step.component != comp {
                    return Err(bad(format!("reply must be forced in component {comp}")));
                }
            }
            None => {
                if step.forced {
                    return Err(bad("unexpected forced step".into()));
                }
            }
        }
        nodes[step.component] = step.to;
        pending_reply = d.is_gray(step.to).then_some(step.component);
    }
    let opponent_to_move = line.len() % 2 == 1;
    if let Some(comp) = pending_reply {
        let d = &p.components[comp].0.digraph;
        if !d.is_terminal(nodes[comp]) {
            return Err(AlgebraError::BadLine(
                line.len(),
                format!("line ends mid-entailment in component {comp}"),
            ));
        }
        // Entailed with no reply: the line ends the game.
        return Ok(ReplayEnd { nodes, value: None, opponent_to_move });
    }
    let value = p.value_at(&nodes);
    Ok(ReplayEnd { nodes, value, opponent_to_move })
}
