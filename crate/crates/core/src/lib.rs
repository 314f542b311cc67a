//! Exact verification tools for Erdős–Ko–Rado properties of independent-set
//! families in vertex-disjoint unions of length-2 paths and of k-claws.
//!
//! The crate enumerates independent sets, compresses intersecting families,
//! builds circular interval families over good permutations, samples
//! independent sets through a weighted circle construction, and computes
//! maximum intersecting families exactly by clique search.

pub mod binom;
pub mod clique;
pub mod cycle;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod independent;
pub mod sampler;
pub mod set;
pub mod shifting;

pub use error::{Error, Result};
pub use graph::{Graph, GraphKind, VertexId};
pub use set::{Family, VertexSet};
