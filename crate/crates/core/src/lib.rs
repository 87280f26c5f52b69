//! Exact graph decompositions driven by fractional orientations.
//!
//! The crate computes density measures of simple graphs exactly, finds
//! `m`-allocations (fractional orientations with out-weight at most `m`) by
//! maximum flow, improves them by shifting weight along cycles, and turns the
//! resulting integral digraph into sparse edge partitions: a pseudoforest
//! whose complement has small 2-density, a forest whose complement has small
//! 4/3-density, Nash-Williams forest partitions, and two-colorings that avoid
//! a pair of fixed subgraphs.

pub mod allocation;
pub mod certificate;
pub mod decompose;
pub mod density;
pub mod flow;
pub mod graph;
pub mod io;
pub mod ramsey;
pub mod rational;
pub mod spine;

pub use graph::{Digraph, Edge, Graph, GraphError};
pub use rational::Rational;
