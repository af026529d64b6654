//! Solvers and disjunctive-sum algebra for impartial games on finite
//! digraphs.
//!
//! This crate covers four nested families of impartial games, each defined
//! by a restriction on its game digraph: short games (acyclic), cyclic
//! games, acyclic games with entailing moves (gray nodes compel the
//! opponent's reply), and cyclic games with carry-on moves (gray nodes of
//! outdegree at most one, so the mover effectively leaps and keeps the
//! turn). For each family there is a fixpoint solver assigning a value to
//! every node, a value algebra folding disjunctive sums, and an
//! outcome map. A retrograde oracle over product digraphs provides
//! independent ground truth, and the [`hackenbush`] module analyzes the
//! green-lime variant of hackenbush by compiling drawings into carry-on
//! digraphs.

pub mod algebra;
pub mod digraph;
pub mod fixtures;
pub mod hackenbush;
pub mod oracle;
pub mod solvers;
pub mod values;

pub use algebra::{
    best_move, gray_presence_verdict, outcome_of, position_outcome, position_value, sum_value,
    MoveAdvice, SumPosition, Verdict,
};
pub use digraph::{classify, validate, Game, GameDigraph, NodeColor, NodeId, TheoryClass};
pub use solvers::{
    solve_auto, solve_carry, solve_cyclic, solve_entailing, solve_short, Assignment,
    NodeAssignment, SolveError,
};
pub use values::{nim_sum, GrayValue, NatSet, Outcome, WhiteValue};
