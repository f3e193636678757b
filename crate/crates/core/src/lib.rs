//! Minimum branch vertices spanning trees.
//!
//! Given a connected graph, find a spanning tree with as few vertices of
//! degree greater than two as possible. The crate provides a linear-time lower
//! bound from obligatory branch vertices, a decomposition that splits those
//! vertices and removes cut edges, two constructive heuristics, an exact branch
//! and bound that works on the whole graph or on the decomposed components, and
//! a brute-force oracle for small graphs.

pub mod bench;
pub mod bound;
pub mod decompose;
pub mod error;
pub mod generate;
pub mod graph;
pub mod heuristics;
pub mod io;
pub mod oracle;
pub mod report;
pub mod solver;
pub mod structure;
mod union_find;

pub use bound::{obligatory_branch_bound, LowerBoundResult};
pub use decompose::{component_branch_count, decompose, decomposed_objective, recombine, Component, Decomposition, Provenance};
pub use error::{MbvError, Result};
pub use graph::{branch_count, connected_components, is_spanning_tree, Edge, EdgeId, Graph, SpanningTree, VertexId};
pub use heuristics::{best_heuristic, multi_path_expanding, path_expanding, start_restart_select, HeuristicState, Overlay};
pub use oracle::{brute_force_optimum, enumerate_spanning_trees, OracleResult};
pub use solver::{solve_component, solve_plain, solve_with_decomposition, SolveOptions, SolveReport};
pub use structure::{structural_report, StructuralReport};
