//! Bipartite graph saturation toolkit.
//!
//! * [`bigraph`]: immutable bipartite graphs and `K_{s,t}` containment.
//! * [`saturation`]: free / saturated / strong / weak predicates.
//! * [`constructions`]: extremal families and the closed-form formula table.
//! * [`analysis`]: cores, nice cores, partitions and counting certificates.
//! * [`search`]: exact small-`n` saturation numbers and extremal censuses.

pub mod analysis;
pub mod bigraph;
pub mod bitset;
pub mod constructions;
pub mod sampling;
pub mod saturation;
pub mod search;

pub use bigraph::{BipartiteGraph, CopyWitness, GraphError, Orientation, PatternMode, PatternSpec, Side};
pub use bitset::VertexSet;
