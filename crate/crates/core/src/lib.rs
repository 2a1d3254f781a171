//! Transposition sequences and their duals.
//!
//! A sequence of transpositions over `[n]` doubles as an edge-labeled
//! multigraph. This crate computes the dual of such a sequence four
//! independent ways, builds minimal increasing greedy trails and decides when
//! a trail double cover comes from a labeling, maps factorizations of the long
//! cycle `(n,...,2,1)` bijectively onto vertex-labeled trees, and models the
//! circle chord diagram picture of the same dual.
//!
//! Products are read left to right: the leftmost factor acts first.

pub mod bijection;
pub mod chord;
pub mod dual;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod mindbody;
pub mod perm;
pub mod trails;

pub use bijection::{Direction, VertexLabeledTree, VertexPartition};
pub use chord::CircleChordDiagram;
pub use dual::DualMethod;
pub use error::{Error, Result};
pub use graph::LabeledMultigraph;
pub use mindbody::{MindBodyAssignment, MindBodySequence};
pub use perm::{Permutation, Trajectory, Transposition, TranspositionSequence};
pub use trails::{EdgeDigraph, EdgeLabeling, Realization, Trail, TrailDoubleCover};
