//! Shared instance builders for the benchmark targets.

use impartial::digraph::{GameDigraph, TheoryClass};
use impartial::hackenbush::shapes::full_glass;
use impartial::hackenbush::EdgeColor::{Green, Lime};
use impartial::hackenbush::HbPosition;
use impartial::oracle::random_digraph;

/// A mid-sized carry-on digraph, deterministic per seed.
pub fn carry_instance(nodes: usize, seed: u64) -> GameDigraph {
    random_digraph(nodes, 0.08, 0.25, TheoryClass::CarryOn, seed).expect("valid parameters")
}

/// A gray-free cyclic digraph for the plain cyclic solver.
pub fn cyclic_instance(nodes: usize, seed: u64) -> GameDigraph {
    random_digraph(nodes, 0.08, 0.0, TheoryClass::Cyclic, seed).expect("valid parameters")
}

/// The full-glass drawing whose compiled digraph exercises toggles,
/// carry-ons, and a cyclic zone.
pub fn full_glass_drawing() -> HbPosition {
    full_glass(Green, Green, Green, Lime)
}
