//! Disjunctive domination (2DD-sets): graphs, an exact solver, the
//! forbidden family, extremal constructions, graph enumeration, and a
//! reduction engine certifying `γ²ᵈ(G) <= ⌊n/3⌋` for graphs of minimum
//! degree 2.
//!
//! A vertex `v` is 2D-dominated by `S` when `N[v]` meets `S` or at least
//! two vertices of `S` lie at distance exactly 2 from `v`.

mod bits;
pub mod bound;
pub mod catalog;
pub mod disjunctive;
pub mod enumeration;
pub mod families;
pub mod graph;

pub use bits::{BitIter, VertexSet};
pub use bound::{certify_bound, certify_bound_with, BoundError, BoundOptions, ReductionTrace};
pub use disjunctive::{gamma_d2, gamma_d2_value, is_2d_dominated, is_2dd_set, Certificate};
pub use graph::{parse_graph6, to_graph6, Graph, GraphError};
