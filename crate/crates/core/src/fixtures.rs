//! Small example digraphs used across the test suite and the bundled
//! fixture files. Node ids are dense and assigned in declaration order so
//! every solve is reproducible against them.

use crate::digraph::{Game, GameDigraph, NodeColor, NodeId};

use NodeColor::{Gray, White};

fn build(colors: &[NodeColor], arcs: &[(u32, u32)]) -> GameDigraph {
    let mut d = GameDigraph::with_colors(colors.iter().copied());
    for &(from, to) in arcs {
        d.add_arc(NodeId(from), NodeId(to)).unwrap();
    }
    d
}

/// Nine-node acyclic digraph: two chains joined near the top, root value 1.
///
/// Nodes: 0 the root, 1 its lone predecessor, 2..8 the chains below;
/// 5, 6, 8 are terminal.
pub fn two_branch_acyclic() -> GameDigraph {
    build(
        &[White; 9],
        &[
            (0, 2),
            (1, 0),
            (1, 3),
            (2, 4),
            (3, 5),
            (4, 6),
            (4, 7),
            (7, 8),
        ],
    )
}

/// The previous digraph with the top three nodes closed into a 3-cycle and a
/// tenth node (9) probing the cycle from outside.
///
/// Off-cycle values: 5, 6, 8 are 0; 3 and 7 are 1; 4 is 2; 9 is 1 (assigned
/// through reversibility into the cycle). Cycle: 1 exits to value 1, 2 exits
/// to value 2, 0 has no finite exit.
pub fn two_branch_with_cycle() -> GameDigraph {
    let mut d = two_branch_acyclic();
    d.add_arc(NodeId(2), NodeId(1)).unwrap();
    let probe = d.add_node(White);
    d.add_arc(probe, NodeId(1)).unwrap();
    d.add_arc(probe, NodeId(5)).unwrap();
    d
}

/// Acyclic digraph with two entailing branches; its protected values are
/// every value except 1 and its root value is 1.
///
/// Nodes: 0 start; 1 white (value 2); 2 gray; 3, 5, 7, 9, 11 terminal;
/// 4, 6 white (value 1); 8 white lunar; 10 gray covering everything but 0.
pub fn entailing_protection() -> GameDigraph {
    build(
        &[
            White, White, Gray, White, White, White, White, White, White, White, Gray, White,
        ],
        &[
            (0, 1),
            (0, 2),
            (1, 3),
            (1, 4),
            (4, 5),
            (2, 6),
            (6, 7),
            (2, 8),
            (8, 9),
            (8, 10),
            (10, 11),
        ],
    )
}

/// The two-branch acyclic digraph with nodes 1 and 7 turned gray and the
/// top arc reversed, the worked example of the entailing solver.
///
/// Final values: gray 7 covers everything except 0, gray 1 everything
/// except 1, node 4 is lunar, root is 1.
pub fn entailing_two_branch() -> GameDigraph {
    build(
        &[White, Gray, White, White, White, White, White, Gray, White],
        &[
            (0, 1),
            (0, 2),
            (1, 3),
            (2, 4),
            (3, 5),
            (4, 6),
            (4, 7),
            (7, 8),
        ],
    )
}

/// Cyclic digraph with carry-on moves whose start is assigned 1 through a
/// hit-and-run reversion into the cyclic zone.
///
/// Nodes: 0 start; 1, 4, 9 white values 0; 2 gray covering everything but 1;
/// 3, 8 white value 1; 5, 7, 10, 11 the cyclic zone; 6 the gray carry-on
/// node inside it.
pub fn carry_hit_and_run() -> GameDigraph {
    build(
        &[
            White, White, Gray, White, White, White, Gray, White, White, White, White, White,
        ],
        &[
            (0, 1),
            (0, 2),
            (0, 5),
            (2, 3),
            (3, 4),
            (5, 6),
            (6, 7),
            (7, 8),
            (7, 10),
            (8, 9),
            (10, 11),
            (11, 7),
        ],
    )
}

/// Chain white -> gray -> gray -> gray: alternating full and new moons.
pub fn moon_chain_left() -> GameDigraph {
    build(&[White, Gray, Gray, Gray], &[(0, 1), (1, 2), (2, 3)])
}

/// Chain white -> gray -> gray: the white node is a previous-player win.
pub fn moon_chain_right() -> GameDigraph {
    build(&[White, Gray, Gray], &[(0, 1), (1, 2)])
}

/// The classic three-piece cyclic demo: a value chain 0..3 plus a pass node
/// probing values 2 and 3 from inside a cycle.
///
/// Nodes: 0 terminal, 1 value 1, 2 value 2, 3 value 3, 4 the pass node left
/// infinite with exits {2, 3}. The pieces sit on 1, 3 and 4.
pub fn fraenkel() -> GameDigraph {
    build(
        &[White; 5],
        &[
            (1, 0),
            (2, 0),
            (2, 1),
            (3, 0),
            (3, 1),
            (3, 2),
            (4, 2),
            (4, 3),
            (4, 4),
        ],
    )
}

/// The three marked pieces of the classic example, as games.
pub fn fraenkel_pieces() -> Vec<Game> {
    let d = fraenkel();
    [1, 3, 4]
        .into_iter()
        .map(|s| Game::new(d.clone(), NodeId(s)).unwrap())
        .collect()
}

/// A nim heap of size `n`: node `i` has value `i`, the piece starts on `n`.
pub fn nim_heap(n: u32) -> Game {
    let mut d = GameDigraph::with_colors((0..=n).map(|_| White));
    for i in 0..=n {
        for j in 0..i {
            d.add_arc(NodeId(i), NodeId(j)).unwrap();
        }
    }
    Game::new(d, NodeId(n)).unwrap()
}

/// The game with a pass move and exits to every heap below `n`: a cyclic
/// value infinity adorned with 0..n-1. Start is the last node.
pub fn pass_with_exits(n: u32) -> Game {
    let mut d = GameDigraph::with_colors((0..n).map(|_| White));
    for i in 0..n {
        for j in 0..i {
            d.add_arc(NodeId(i), NodeId(j)).unwrap();
        }
    }
    let j = d.add_node(White);
    d.add_arc(j, j).unwrap();
    for i in 0..n {
        d.add_arc(j, NodeId(i)).unwrap();
    }
    Game::new(d, j).unwrap()
}

/// The game with a pass move and a single carry-on move onto a heap of size
/// `n`: the nymphet of `n`. Start is the last node.
pub fn pass_with_carry(n: u32) -> Game {
    let mut d = GameDigraph::with_colors((0..=n).map(|_| White));
    for i in 0..=n {
        for j in 0..i {
            d.add_arc(NodeId(i), NodeId(j)).unwrap();
        }
    }
    let gray = d.add_node(Gray);
    d.add_arc(gray, NodeId(n)).unwrap();
    let j = d.add_node(White);
    d.add_arc(j, j).unwrap();
    d.add_arc(j, gray).unwrap();
    Game::new(d, j).unwrap()
}

/// A heap of size `n` behind a single carry-on move, without a pass: equal
/// in value to the plain heap.
pub fn carry_to_heap(n: u32) -> Game {
    let mut d = GameDigraph::with_colors((0..=n).map(|_| White));
    for i in 0..=n {
        for j in 0..i {
            d.add_arc(NodeId(i), NodeId(j)).unwrap();
        }
    }
    let gray = d.add_node(Gray);
    d.add_arc(gray, NodeId(n)).unwrap();
    let w = d.add_node(White);
    d.add_arc(w, gray).unwrap();
    Game::new(d, w).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{classify, TheoryClass};

    #[test]
    fn classes_are_as_expected() {
        assert_eq!(classify(&two_branch_acyclic()), Ok(TheoryClass::Short));
        assert_eq!(classify(&two_branch_with_cycle()), Ok(TheoryClass::Cyclic));
        assert_eq!(classify(&entailing_protection()), Ok(TheoryClass::Entailing));
        assert_eq!(classify(&entailing_two_branch()), Ok(TheoryClass::Entailing));
        assert_eq!(classify(&carry_hit_and_run()), Ok(TheoryClass::CarryOn));
        assert_eq!(classify(&moon_chain_left()), Ok(TheoryClass::Entailing));
        assert_eq!(classify(&fraenkel()), Ok(TheoryClass::Cyclic));
    }

    #[test]
    fn chain_shapes() {
        let left = moon_chain_left();
        assert_eq!(left.node_count(), 4);
        assert_eq!(left.arc_count(), 3);
        assert!(left.is_white(NodeId(0)));
        assert!(left.is_gray(NodeId(1)) && left.is_gray(NodeId(2)) && left.is_gray(NodeId(3)));
    }
}
