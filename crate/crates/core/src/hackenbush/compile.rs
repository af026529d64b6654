//! Compiling drawings into carry-on game digraphs and solving them.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::algebra::{best_move, outcome_of, position_value, SumPosition, Verdict};
use crate::digraph::{Game, GameDigraph, NodeColor, NodeId};
use crate::solvers::{solve_carry, Assignment};
use crate::values::{Outcome, WhiteValue};

use super::{HbError, HbMove, HbPosition, PositionKey};

/// Default bound on distinct reachable positions per component.
pub const DEFAULT_POSITION_CAP: usize = 100_000;

/// A node of a compiled digraph: the position it stands for, and whether it
/// is the gray half of a carry-on move (in which case the position is the
/// pending result the forced reply lands on).
#[derive(Clone, Debug)]
pub struct CompiledNode {
    pub position: HbPosition,
    pub gray: bool,
}

/// A drawing compiled into a carry-on game digraph.
///
/// White nodes stand for reachable positions, deduplicated by surviving
/// edge ids and colors. Each carry-on move compiles into an arc to a gray
/// node whose single arc targets the resulting position; one gray node per
/// distinct target, shared across sources. Every white-to-node arc remembers
/// the move that produced it.
#[derive(Clone, Debug)]
pub struct CompiledGame {
    pub game: Game,
    nodes: Vec<CompiledNode>,
    move_for_arc: BTreeMap<(NodeId, NodeId), HbMove>,
}

impl CompiledGame {
    pub fn root(&self) -> NodeId {
        self.game.start
    }

    pub fn node(&self, id: NodeId) -> &CompiledNode {
        &self.nodes[id.index()]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// The move realizing a white-to-successor arc.
    pub fn move_for(&self, from: NodeId, to: NodeId) -> Option<HbMove> {
        self.move_for_arc.get(&(from, to)).copied()
    }

    /// White nodes only, with their positions.
    pub fn white_nodes(&self) -> impl Iterator<Item = (NodeId, &HbPosition)> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| !n.gray)
            .map(|(i, n)| (NodeId(i as u32), &n.position))
    }
}

/// Breadth-first closure over the reachable positions of a drawing.
pub fn compile_to_digraph(p0: &HbPosition, cap: usize) -> Result<CompiledGame, HbError> {
    let mut d = GameDigraph::new();
    let mut nodes: Vec<CompiledNode> = Vec::new();
    let mut whites: BTreeMap<PositionKey, NodeId> = BTreeMap::new();
    let mut grays: BTreeMap<PositionKey, NodeId> = BTreeMap::new();
    let mut move_for_arc: BTreeMap<(NodeId, NodeId), HbMove> = BTreeMap::new();
    let mut queue: VecDeque<NodeId> = VecDeque::new();

    let mut intern_white = |p: HbPosition,
                            d: &mut GameDigraph,
                            nodes: &mut Vec<CompiledNode>,
                            queue: &mut VecDeque<NodeId>|
     -> Result<NodeId, HbError> {
        let key = p.key();
        if let Some(&id) = whites.get(&key) {
            return Ok(id);
        }
        if whites.len() >= cap {
            return Err(HbError::CapExceeded(cap));
        }
        let id = d.add_node(NodeColor::White);
        nodes.push(CompiledNode { position: p, gray: false });
        whites.insert(key, id);
        queue.push_back(id);
        Ok(id)
    };

    let root = intern_white(p0.clone(), &mut d, &mut nodes, &mut queue)?;
    while let Some(from) = queue.pop_front() {
        let position = nodes[from.index()].position.clone();
        for (mv, result, carry) in position.legal_moves() {
            let target = if carry {
                let key = result.key();
                match grays.get(&key) {
                    Some(&g) => g,
                    None => {
                        let w = intern_white(result.clone(), &mut d, &mut nodes, &mut queue)?;
                        let g = d.add_node(NodeColor::Gray);
                        nodes.push(CompiledNode { position: result, gray: true });
                        grays.insert(key, g);
                        d.add_arc(g, w).unwrap();
                        g
                    }
                }
            } else {
                intern_white(result, &mut d, &mut nodes, &mut queue)?
            };
            if d.add_arc(from, target).unwrap() {
                move_for_arc.insert((from, target), mv);
            }
        }
    }
    debug_assert!(crate::digraph::validate(&d, crate::digraph::TheoryClass::CarryOn).is_empty());
    let game = Game::new(d, root).expect("root exists");
    Ok(CompiledGame { game, nodes, move_for_arc })
}

/// Compiles and solves a drawing, returning its value.
pub fn solve_position(p: &HbPosition) -> Result<WhiteValue, HbError> {
    let compiled = compile_to_digraph(p, DEFAULT_POSITION_CAP)?;
    let a = solve_carry(&compiled.game.digraph)?;
    Ok(a.white_value(compiled.root()).expect("root is white").clone())
}

/// One mover action of a recommended hackenbush line.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HbLineStep {
    pub component: usize,
    pub mv: HbMove,
    pub carry_on: bool,
}

impl fmt::Display for HbLineStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "component#{}: {}", self.component + 1, self.mv)?;
        if self.carry_on {
            write!(f, " (carry-on)")?;
        }
        Ok(())
    }
}

/// Move recommendation in terms of drawing moves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HbAdvice {
    pub verdict: Verdict,
    pub steps: Vec<HbLineStep>,
    pub rationale: String,
}

/// Full analysis of a sum of drawings.
#[derive(Clone, Debug)]
pub struct HbAnalysis {
    pub value: WhiteValue,
    pub outcome: Outcome,
    pub advice: HbAdvice,
    /// The compiled components, for callers that want the digraphs.
    pub components: Vec<(CompiledGame, Assignment)>,
}

/// Solves each component, folds the sum, and recommends a move, translating
/// digraph arcs back into drawing moves. Forced replies inside carry-on
/// moves have no drawing action of their own and are folded into the
/// carry-on flag of the preceding removal.
pub fn analyze_sum(ps: &[HbPosition], cap: usize) -> Result<HbAnalysis, HbError> {
    if ps.is_empty() {
        return Err(HbError::EmptySum);
    }
    let mut compiled = Vec::with_capacity(ps.len());
    for p in ps {
        let c = compile_to_digraph(p, cap)?;
        let a = solve_carry(&c.game.digraph)?;
        compiled.push((c, a));
    }
    let sum = SumPosition::new(
        compiled
            .iter()
            .map(|(c, a)| (c.game.clone(), a.clone()))
            .collect(),
    )
    .expect("nonempty");
    let value = position_value(&sum).expect("hackenbush roots are white");
    let outcome = outcome_of(&value);
    let advice_raw = best_move(&sum).map_err(|e| {
        HbError::Solve(crate::solvers::SolveError::Internal(e.to_string()))
    })?;
    let mut steps = Vec::new();
    for step in &advice_raw.line {
        if step.forced {
            continue;
        }
        let (c, _) = &compiled[step.component];
        let mv = c
            .move_for(step.from, step.to)
            .expect("every non-forced arc carries a move");
        let carry_on = c.game.digraph.is_gray(step.to);
        steps.push(HbLineStep { component: step.component, mv, carry_on });
    }
    let advice = HbAdvice { verdict: advice_raw.verdict, steps, rationale: advice_raw.rationale };
    Ok(HbAnalysis { value, outcome, advice, components: compiled })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hackenbush::shapes::{glass, stalk};
    use crate::hackenbush::EdgeColor::{Green, Lime};
    use crate::values::NatSet;

    #[test]
    fn single_lime_edge_compiles_to_two_nodes() {
        let c = compile_to_digraph(&stalk(&[Lime]), 100).unwrap();
        assert_eq!(c.node_count(), 2);
        assert_eq!(c.game.digraph.arc_count(), 1);
        assert_eq!(solve_position(&stalk(&[Lime])).unwrap(), WhiteValue::Finite(1));
    }

    #[test]
    fn two_color_stalk_values() {
        assert_eq!(solve_position(&stalk(&[Green, Lime])).unwrap(), WhiteValue::Finite(0));
        assert_eq!(solve_position(&stalk(&[Lime, Green])).unwrap(), WhiteValue::Finite(2));
        assert_eq!(solve_position(&stalk(&[Green])).unwrap(), WhiteValue::Finite(1));
    }

    #[test]
    fn mixed_stalk_digraph_has_mutual_toggles_and_shared_gray() {
        // The two-edge mixed stalks toggle into each other; the green-bottom
        // one also carries on to the empty position.
        let c = compile_to_digraph(&stalk(&[Green, Lime]), 100).unwrap();
        let d = &c.game.digraph;
        let grays: Vec<NodeId> = d.gray_nodes().collect();
        assert_eq!(grays.len(), 1);
        assert_eq!(d.out_degree(grays[0]), 1);
        // Root toggles to the lime-green stalk and back.
        let root = c.root();
        let toggled = d
            .options(root)
            .iter()
            .copied()
            .find(|&n| d.is_white(n) && c.node(n).position.edges().len() == 2)
            .unwrap();
        assert!(d.options(toggled).contains(&root));
    }

    #[test]
    fn glass_cap_is_enforced() {
        let e = compile_to_digraph(&glass(Lime, Green, Lime), 2);
        assert!(matches!(e, Err(HbError::CapExceeded(2))));
    }

    #[test]
    fn mixed_glass_has_two_node_cyclic_zone() {
        let c = compile_to_digraph(&glass(Lime, Green, Lime), 1000).unwrap();
        let a = solve_carry(&c.game.digraph).unwrap();
        let zone: Vec<NodeId> = a.cyclic_zone().collect();
        assert_eq!(zone.len(), 2);
        for n in zone {
            assert_eq!(
                a.white_value(n),
                Some(&WhiteValue::Inf(NatSet::finite([0, 2])))
            );
        }
        assert_eq!(
            a.white_value(c.root()),
            Some(&WhiteValue::Inf(NatSet::finite([0, 2])))
        );
    }

    #[test]
    fn empty_sum_is_rejected() {
        assert!(matches!(analyze_sum(&[], 100), Err(HbError::EmptySum)));
    }
}
