//! Named built-in inputs and the reference values the demos check against.

use markovnet_core::synth;
use markovnet_core::{ClusterTree, JointDistribution};

pub const DISTRIBUTIONS: &[&str] = &["moussouris"];
pub const TREES: &[&str] = &["figure3"];

pub fn distribution(name: &str) -> Option<JointDistribution> {
    match name {
        "moussouris" => Some(synth::moussouris()),
        _ => None,
    }
}

pub fn tree(name: &str) -> Option<ClusterTree> {
    match name {
        "figure3" => Some(synth::figure3_tree()),
        _ => None,
    }
}

/// Published information contents for the Moussouris distribution, keyed by
/// the 1-based variables removed from `V`.
pub const MOUSSOURIS_INFO: [(&[usize], f64); 11] = [
    (&[], 1.000000),
    (&[4], 0.500000),
    (&[3], 0.500000),
    (&[2], 0.500000),
    (&[1], 0.500000),
    (&[3, 4], 0.188722),
    (&[2, 4], 0.000000),
    (&[2, 3], 0.188722),
    (&[1, 4], 0.188722),
    (&[1, 3], 0.000000),
    (&[1, 2], 0.188722),
];

/// Published pair KL divergences for the Moussouris distribution (1-based).
pub const MOUSSOURIS_PAIR_KL: [((usize, usize), f64); 6] = [
    ((3, 4), 0.188722),
    ((2, 4), 0.000000),
    ((2, 3), 0.188722),
    ((1, 4), 0.188722),
    ((1, 3), 0.000000),
    ((1, 2), 0.188722),
];

/// The two cluster pairs the Moussouris distribution factorizes over.
pub const MOUSSOURIS_DECOMPOSITIONS: [[&[usize]; 2]; 2] = [[&[1, 2, 4], &[2, 3, 4]], [&[1, 3, 4], &[1, 2, 3]]];

/// Published absolute tolerance of the 6-decimal reference values.
pub const REFERENCE_TOLERANCE: f64 = 1e-5;

/// Pairs with nonzero KL in the 8-variable example (1-based); every other
/// pair is a non-edge.
pub const FIGURE3_EDGES: [(usize, usize); 13] = [
    (7, 8),
    (5, 7),
    (5, 6),
    (4, 8),
    (4, 7),
    (4, 6),
    (4, 5),
    (3, 8),
    (3, 7),
    (2, 8),
    (2, 7),
    (1, 8),
    (1, 2),
];
