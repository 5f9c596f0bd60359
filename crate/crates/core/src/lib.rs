//! Exact Turán numbers for families mixing long cycles with a fixed graph.
//!
//! Graphs have at most 64 vertices and are stored as adjacency bit sets.
//! The [`oracle`] computes `ex(n, 𝓕)` and the extremal graphs by
//! isomorph-free search; [`verify`] checks inequalities and closed forms
//! against it.

pub mod canon;
pub mod constructions;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod oracle;
pub mod structure;
pub mod verify;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use error::{Result, TuranError};
pub use families::GraphFamily;
pub use graph::SmallGraph;
pub use oracle::{ex_exact, extremal_graphs, Connectivity, ExRecord, SearchConstraint};
pub use structure::PValue;
