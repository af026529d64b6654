//! The four Grundy-value assignment algorithms.
//!
//! All four share the same skeleton: initialize terminals, then run
//! synchronized steps in which step `n+1` reads only the step-`n` snapshot,
//! until nothing changes. Assignments are permanent, so the run ends within
//! `#nodes` steps. Nodes still unassigned at the end form the cyclic zone
//! and receive adorned infinite values at the return stage.
//!
//! * [`solve_short`] — acyclic digraphs without gray nodes (plain mex).
//! * [`solve_cyclic`] — cyclic digraphs without gray nodes (mex plus
//!   reversibility of unassigned options).
//! * [`solve_entailing`] — acyclic digraphs with gray nodes (mex over direct
//!   values united with cover sets).
//! * [`solve_carry`] — cyclic digraphs whose gray nodes have outdegree at
//!   most one; the unified algorithm with absorbing moons.

use std::fmt;

use thiserror::Error;

use crate::digraph::{classify, GameDigraph, NodeId, TheoryClass, Violation};
use crate::values::{GrayValue, WhiteValue};

mod acyclic;
mod carry;
mod cyclic;

pub use acyclic::{covered_values, protects_acyclic, solve_entailing, solve_short};
pub use carry::{direct_values, forcing_values, protects_carry, solve_carry};
pub use cyclic::solve_cyclic;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("digraph outside {expected}: {}", violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Precondition { expected: &'static str, violations: Vec<Violation> },
    #[error("unsupported digraph: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Final value of one node, matching its color.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NodeAssignment {
    White(WhiteValue),
    Gray(GrayValue),
}

impl fmt::Display for NodeAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeAssignment::White(v) => write!(f, "{v}"),
            NodeAssignment::Gray(v) => write!(f, "{v}"),
        }
    }
}

/// Complete solver output for one digraph.
///
/// Every node holds a value matching its color. `assigned_at` records the
/// step at which a node first left its initial unassigned state; nodes of the
/// cyclic zone keep `None`. Once assigned, a value never changes in a later
/// step, and the run ends at a step no larger than the node count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assignment {
    values: Vec<NodeAssignment>,
    assigned_at: Vec<Option<u32>>,
    steps: u32,
    moon_unadorned: bool,
}

impl Assignment {
    pub(crate) fn new(
        values: Vec<NodeAssignment>,
        assigned_at: Vec<Option<u32>>,
        steps: u32,
        moon_unadorned: bool,
    ) -> Self {
        debug_assert_eq!(values.len(), assigned_at.len());
        Assignment { values, assigned_at, steps, moon_unadorned }
    }

    pub fn node_count(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, n: NodeId) -> &NodeAssignment {
        &self.values[n.index()]
    }

    pub fn white_value(&self, n: NodeId) -> Option<&WhiteValue> {
        match &self.values[n.index()] {
            NodeAssignment::White(v) => Some(v),
            NodeAssignment::Gray(_) => None,
        }
    }

    pub fn gray_value(&self, n: NodeId) -> Option<&GrayValue> {
        match &self.values[n.index()] {
            NodeAssignment::Gray(v) => Some(v),
            NodeAssignment::White(_) => None,
        }
    }

    /// Step at which the node was assigned; `None` for the cyclic zone.
    pub fn assigned_step(&self, n: NodeId) -> Option<u32> {
        self.assigned_at[n.index()]
    }

    /// Step at which the ending condition was reached.
    pub fn steps(&self) -> u32 {
        self.steps
    }

    /// True when produced by [`solve_entailing`], whose theory has a single
    /// lunar value: moon adorns are recorded empty rather than computed.
    pub fn moon_unadorned(&self) -> bool {
        self.moon_unadorned
    }

    /// Nodes of the cyclic zone: those never assigned by the fixpoint.
    pub fn cyclic_zone(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.assigned_at
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_none())
            .map(|(i, _)| NodeId(i as u32))
    }

    /// Per-step snapshots, grouping nodes by assignment step. Snapshot `k+1`
    /// differs from snapshot `k` exactly by the newly assigned nodes.
    pub fn trace(&self) -> Vec<TraceStep> {
        let mut by_step: Vec<(u32, NodeId)> = self
            .assigned_at
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|step| (step, NodeId(i as u32))))
            .collect();
        by_step.sort();
        let mut out: Vec<TraceStep> = Vec::new();
        for (step, node) in by_step {
            if out.last().map(|t| t.step) != Some(step) {
                out.push(TraceStep { step, assigned: Vec::new() });
            }
            out.last_mut()
                .unwrap()
                .assigned
                .push((node, self.values[node.index()].clone()));
        }
        out
    }
}

/// One step of a solve: the nodes newly assigned at that step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceStep {
    pub step: u32,
    pub assigned: Vec<(NodeId, NodeAssignment)>,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}:", self.step)?;
        for (n, v) in &self.assigned {
            write!(f, " {n}={v}")?;
        }
        Ok(())
    }
}

fn classify_for_solving(d: &GameDigraph) -> Result<TheoryClass, SolveError> {
    classify(d).map_err(|e| match e {
        crate::digraph::DigraphError::Unsupported(msg) => SolveError::Unsupported(msg),
        other => SolveError::Unsupported(other.to_string()),
    })
}

pub(crate) fn require_class(
    d: &GameDigraph,
    accepted: &[TheoryClass],
    expected: &'static str,
) -> Result<(), SolveError> {
    let class = classify_for_solving(d)?;
    if accepted.contains(&class) {
        Ok(())
    } else {
        let violations = crate::digraph::validate(d, accepted[accepted.len() - 1]);
        Err(SolveError::Precondition { expected, violations })
    }
}

/// Solves with the most restrictive applicable algorithm.
pub fn solve_auto(d: &GameDigraph) -> Result<Assignment, SolveError> {
    match classify_for_solving(d)? {
        TheoryClass::Short => solve_short(d),
        TheoryClass::Cyclic => solve_cyclic(d),
        TheoryClass::Entailing => solve_entailing(d),
        TheoryClass::CarryOn => solve_carry(d),
    }
}
