//! Odd complete-bipartite and odd clique minor models in graphs whose
//! independence number is at most two, with an independent verifier and a
//! brute-force oracle for small graphs.

pub mod bitset;
pub mod construct;
pub mod error;
pub mod graph;
pub mod harness;
pub mod invariants;
pub mod io;
pub mod model;
pub mod oracle;
pub mod search;

pub use bitset::VertexSet;
pub use construct::{
    anti_components, compose_join_models, critical_reduction, odd_clique_from_cut,
    odd_clique_via_clique_and_paths, odd_half_clique, packing_route, special_bipartite_model,
    special_model_half_order, terminal_route, Construction, ConstructionTrace, Reduction, Rule,
    TerminalCaseState, TraceStep,
};
pub use error::{ContradictionEvent, Error, Result};
pub use graph::Graph;
pub use model::{
    verify_odd_model, BranchSet, Color, OddModel, Pattern, Side, Violation, ViolationKind,
};
