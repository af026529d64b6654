//! Solvers for acyclic digraphs: plain mex for gray-free games, and the
//! entailing theory where gray nodes carry cover sets.

use crate::digraph::{GameDigraph, NodeColor, NodeId, TheoryClass};
use crate::solvers::{require_class, Assignment, NodeAssignment, SolveError};
use crate::values::{GrayValue, NatSet, WhiteValue};

/// Grundy values of an acyclic digraph without gray nodes.
///
/// Every node ends with a finite value: terminals get 0, everything else the
/// mex of its option values.
pub fn solve_short(d: &GameDigraph) -> Result<Assignment, SolveError> {
    require_class(d, &[TheoryClass::Short], "short (acyclic, no gray nodes)")?;
    let n = d.node_count();
    let mut cur: Vec<Option<u32>> = (0..n)
        .map(|i| if d.is_terminal(NodeId(i as u32)) { Some(0) } else { None })
        .collect();
    let mut assigned_at: Vec<Option<u32>> =
        cur.iter().map(|s| s.map(|_| 0)).collect();
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
                let vals: Option<Vec<u32>> =
                    d.options(x).iter().map(|y| cur[y.index()]).collect();
                if let Some(vals) = vals {
                    next[x.index()] = Some(NatSet::finite(vals).mex().expect("finite set"));
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
    let values = cur
        .into_iter()
        .map(|v| NodeAssignment::White(WhiteValue::Finite(v.expect("acyclic digraphs assign every node"))))
        .collect();
    Ok(Assignment::new(values, assigned_at, step, false))
}

/// Working state of one node during an entailing solve.
#[derive(Clone, PartialEq, Debug)]
enum EntState {
    Unassigned,
    Fin(u32),
    Moon,
    Covered(NatSet),
}

/// Whether the entailing move into gray node `x` protects the mover against
/// the presence of nim value `k`, given the states of `x`'s options.
///
/// The move protects when every response is harmless: a white response must
/// hold a value other than `k` (lunar values are never `k`), and a gray
/// response must itself fail to protect the responder.
fn cover_check(d: &GameDigraph, states: &[EntState], x: NodeId, k: u32) -> bool {
    if d.is_terminal(x) {
        return true;
    }
    d.options(x).iter().all(|&y| match &states[y.index()] {
        EntState::Fin(v) => *v != k,
        EntState::Moon => true,
        EntState::Covered(c) => !c.contains(k),
        EntState::Unassigned => false,
    })
}

/// Cover set of gray node `x`: every `k` the entailing move protects against.
///
/// The set is always finite or cofinite. If some gray option already has a
/// cofinite cover set, checks beyond the largest excluded value all fail and
/// the result is finite. Otherwise checks from the first value exceeding
/// every option's integers upward all succeed and the result is cofinite.
fn covered_set(d: &GameDigraph, states: &[EntState], x: NodeId) -> NatSet {
    let mut cofinite_bound: Option<u32> = None;
    let mut any_cofinite = false;
    let mut finite_max: Option<u32> = None;
    let bump = |m: Option<u32>, k: u32| Some(m.map_or(k, |v: u32| v.max(k)));
    for &y in d.options(x) {
        match &states[y.index()] {
            EntState::Covered(c) if c.is_cofinite() => {
                any_cofinite = true;
                if let Some(&m) = c.basis().last() {
                    cofinite_bound = bump(cofinite_bound, m);
                }
            }
            EntState::Covered(c) => {
                if let Some(&m) = c.basis().last() {
                    finite_max = bump(finite_max, m);
                }
            }
            EntState::Fin(v) => finite_max = bump(finite_max, *v),
            EntState::Moon => {}
            EntState::Unassigned => unreachable!("options assigned before covering"),
        }
    }
    if any_cofinite {
        let upper = match cofinite_bound {
            Some(l) => l,
            None => return NatSet::empty(),
        };
        NatSet::finite((0..=upper).filter(|&k| cover_check(d, states, x, k)))
    } else {
        let l = finite_max.map_or(0, |m| m + 1);
        let excluded: Vec<u32> = (0..l).filter(|&k| !cover_check(d, states, x, k)).collect();
        debug_assert!(cover_check(d, states, x, l));
        NatSet::cofinite_excluding(excluded)
    }
}

/// Grundy values of an acyclic digraph with entailing moves.
///
/// White nodes get the mex of their direct values united with the cover sets
/// of their gray options, or the lunar value when that union covers every
/// nonnegative integer. Gray nodes get cover sets. This theory has a single
/// lunar value, so moons are emitted unadorned.
pub fn solve_entailing(d: &GameDigraph) -> Result<Assignment, SolveError> {
    require_class(d, &[TheoryClass::Short, TheoryClass::Entailing], "entailing (acyclic)")?;
    let n = d.node_count();
    let mut cur: Vec<EntState> = d
        .nodes()
        .map(|x| match (d.color(x), d.is_terminal(x)) {
            (NodeColor::White, true) => EntState::Fin(0),
            (NodeColor::Gray, true) => EntState::Covered(NatSet::all()),
            _ => EntState::Unassigned,
        })
        .collect();
    let mut assigned_at: Vec<Option<u32>> = cur
        .iter()
        .map(|s| (*s != EntState::Unassigned).then_some(0))
        .collect();
    let mut step = 0;
    if n > 0 {
        loop {
            step += 1;
            let mut next = cur.clone();
            let mut changed = false;
            for x in d.nodes() {
                if cur[x.index()] != EntState::Unassigned {
                    continue;
                }
                if d.options(x)
                    .iter()
                    .any(|y| cur[y.index()] == EntState::Unassigned)
                {
                    continue;
                }
                let state = match d.color(x) {
                    NodeColor::White => {
                        let mut pool = NatSet::empty();
                        for &y in d.options(x) {
                            match &cur[y.index()] {
                                EntState::Fin(v) => pool.insert(*v),
                                EntState::Moon => {}
                                EntState::Covered(c) => pool = pool.union(c),
                                EntState::Unassigned => unreachable!(),
                            }
                        }
                        if pool.is_all() {
                            EntState::Moon
                        } else {
                            EntState::Fin(pool.mex().expect("not all naturals"))
                        }
                    }
                    NodeColor::Gray => EntState::Covered(covered_set(d, &cur, x)),
                };
                next[x.index()] = state;
                assigned_at[x.index()] = Some(step);
                changed = true;
            }
            cur = next;
            if !changed {
                break;
            }
        }
    }
    let values = cur
        .into_iter()
        .map(|s| match s {
            EntState::Fin(v) => NodeAssignment::White(WhiteValue::Finite(v)),
            EntState::Moon => NodeAssignment::White(WhiteValue::Moon(NatSet::empty())),
            EntState::Covered(c) => NodeAssignment::Gray(GrayValue::Cover(c)),
            EntState::Unassigned => unreachable!("acyclic digraphs assign every node"),
        })
        .collect();
    Ok(Assignment::new(values, assigned_at, step, true))
}

fn states_from(d: &GameDigraph, a: &Assignment) -> Vec<EntState> {
    d.nodes()
        .map(|x| match a.value(x) {
            NodeAssignment::White(WhiteValue::Finite(v)) => EntState::Fin(*v),
            NodeAssignment::White(WhiteValue::Moon(_)) => EntState::Moon,
            NodeAssignment::Gray(GrayValue::Cover(c)) => EntState::Covered(c.clone()),
            other => unreachable!("entailing solves never produce {other:?}"),
        })
        .collect()
}

/// Whether the entailing move into gray node `x` protects against value `k`,
/// judged against a finished entailing solve.
pub fn protects_acyclic(d: &GameDigraph, a: &Assignment, x: NodeId, k: u32) -> bool {
    assert!(d.is_gray(x), "protection is defined for gray nodes");
    cover_check(d, &states_from(d, a), x, k)
}

/// Cover set of gray node `x` from a finished entailing solve.
pub fn covered_values(d: &GameDigraph, a: &Assignment, x: NodeId) -> NatSet {
    assert!(d.is_gray(x), "cover sets are defined for gray nodes");
    covered_set(d, &states_from(d, a), x)
}
