//! Discrete joint distributions, information content, junction trees and
//! exact discovery of the pairwise Markov network of a known distribution.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function over immutable values; text formats, reports and the command
//! line live in the `markovnet` companion crate.
//!
//! All information quantities are measured in bits.
//!
//! ```
//! use markovnet_core::{discovery, synth};
//!
//! let p = synth::moussouris();
//! let found = discovery::discover(&p, 1e-9).unwrap();
//! // The Moussouris distribution is pairwise Markov on the 4-cycle.
//! assert_eq!(found.graph.edge_count(), 4);
//! assert!(!found.graph.has_edge(0, 2));
//! assert!(!found.graph.has_edge(1, 3));
//! ```

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod discovery;
pub mod dist;
mod error;
pub mod graph;
pub mod junction_tree;
pub mod synth;
mod varset;

pub use discovery::{discover, pair_kl, precompute, Discovery, InfoContentCache, PairReport};
pub use dist::{Assignment, JointDistribution, VariableSpec};
pub use error::{Error, Result};
pub use graph::UndirectedGraph;
pub use junction_tree::ClusterTree;
pub use varset::VarSet;

/// Default threshold below which a pair KL divergence counts as zero.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Slack allowed for quantities that are nonnegative in exact arithmetic.
pub const NEGATIVE_SLACK: f64 = 1e-9;
