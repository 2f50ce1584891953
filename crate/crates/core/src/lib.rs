//! End counts for graph products of groups.
//!
//! Given a finite simplicial graph with a group label on every vertex, the
//! graph product is the free product of the vertex groups with commuting
//! relations along edges. This crate decides the number of ends (0, 1, 2 or
//! infinity) of that group from the shape of the graph, produces amalgam and
//! tree-of-groups witnesses, runs the finite-vertex-group dictionary checks
//! (hyperbolicity, virtual freeness), and validates the symbolic verdicts
//! against an independent Cayley-ball estimator on concrete cyclic labels.

pub mod classifier;
pub mod decompose;
pub mod document;
pub mod error;
pub mod graph;
pub mod harness;
pub mod labels;
pub mod oracle;

pub use classifier::{ends, EndsVerdict, Witness};
pub use error::{Error, Result};
pub use graph::{SimplicialGraph, Vertex, VertexSet};
pub use labels::{EndsClass, GroupLabel, LabelledGraph};
