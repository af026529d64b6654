//! Solver for cyclic digraphs without gray nodes.

use crate::digraph::{GameDigraph, NodeId, TheoryClass};
use crate::solvers::{require_class, Assignment, NodeAssignment, SolveError};
use crate::values::{NatSet, WhiteValue};

/// Grundy values of a cyclic digraph without gray nodes.
///
/// A node is assigned the mex `m` of its already-assigned option values only
/// when every option holding a value above `m` (unassigned options count as
/// infinite) can revert: that option must itself have an option already
/// assigned `m`. Nodes never assigned form cyclic zones and end with an
/// infinity adorned by the finite values of their options.
pub fn solve_cyclic(d: &GameDigraph) -> Result<Assignment, SolveError> {
    require_class(
        d,
        &[TheoryClass::Short, TheoryClass::Cyclic],
        "cyclic (no gray nodes)",
    )?;
    let n = d.node_count();
    let mut cur: Vec<Option<u32>> = (0..n)
        .map(|i| if d.is_terminal(NodeId(i as u32)) { Some(0) } else { None })
        .collect();
    let mut assigned_at: Vec<Option<u32>> = cur.iter().map(|s| s.map(|_| 0)).collect();
    let mut step = 0;
    if n > 0 {
        loop {
            step += 1;
            let mut next = cur.clone();
            let mut changed = false;
            for x in d.nodes() {
                if cur[x.index()].is_some() {
                    continue;
                }
                let m = NatSet::finite(
                    d.options(x).iter().filter_map(|y| cur[y.index()]),
                )
                .mex()
                .expect("finite set");
                let reverts = d.options(x).iter().all(|&y| {
                    match cur[y.index()] {
                        Some(v) if v <= m => true,
                        // Assigned above m or still unassigned: needs a
                        // response already holding m.
                        _ => d.options(y).iter().any(|z| cur[z.index()] == Some(m)),
                    }
                });
                if reverts {
                    next[x.index()] = Some(m);
                    assigned_at[x.index()] = Some(step);
                    changed = true;
                }
            }
            cur = next;
            if !changed {
                break;
            }
        }
    }
    let values = d
        .nodes()
        .map(|x| {
            let v = match cur[x.index()] {
                Some(v) => WhiteValue::Finite(v),
                None => WhiteValue::Inf(NatSet::finite(
                    d.options(x).iter().filter_map(|y| cur[y.index()]),
                )),
            };
            NodeAssignment::White(v)
        })
        .collect();
    Ok(Assignment::new(values, assigned_at, step, false))
}
