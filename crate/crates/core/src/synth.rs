//! Built-in distributions and seeded generators.
//!
//! Generators use ChaCha8 seeded from a `u64`, so a seed reproduces the same
//! support and weights on every platform for a given build. Variables are
//! named `X1..Xn`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{ClusterTree, Error, JointDistribution, Result, VarSet, VariableSpec};

/// Largest state space [`random_distribution`] will enumerate.
pub const MAX_STATE_SPACE: u64 = 1 << 24;

/// Range of the unnormalized cell weights.
const WEIGHT_RANGE: core::ops::Range<f64> = 0.1..1.0;

/// Parameters for random distributions.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    /// One entry per variable.
    pub cardinalities: Vec<u32>,
    /// Fraction of the state space given positive probability, in `(0, 1]`.
    pub support_fraction: f64,
    pub seed: u64,
}

impl GeneratorConfig {
    /// `n` variables with the same cardinality.
    pub fn uniform(n: usize, cardinality: u32, support_fraction: f64, seed: u64) -> Self {
        GeneratorConfig {
            cardinalities: alloc::vec![cardinality; n],
            support_fraction,
            seed,
        }
    }

    pub fn n(&self) -> usize {
        self.cardinalities.len()
    }

    /// Product of the cardinalities.
    pub fn state_space(&self) -> Result<u64> {
        self.cardinalities
            .iter()
            .try_fold(1u64, |acc, &c| acc.checked_mul(u64::from(c)))
            .filter(|&t| t <= MAX_STATE_SPACE)
            .ok_or(Error::ConfigInvalid {
                reason: "state space too large to enumerate",
            })
    }

    /// Number of support cells this config asks for.
    pub fn support_size(&self) -> Result<usize> {
        self.validate()?;
        let total = self.state_space()?;
        let k = libm::ceil(self.support_fraction * total as f64) as u64;
        Ok(k.clamp(1, total) as usize)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cardinalities.is_empty() {
            return Err(Error::ConfigInvalid {
                reason: "need at least one variable",
            });
        }
        if self.cardinalities.contains(&0) {
            return Err(Error::ConfigInvalid {
                reason: "cardinalities must be at least 1",
            });
        }
        let f = self.support_fraction;
        if !(f > 0.0 && f <= 1.0) {
            return Err(Error::ConfigInvalid {
                reason: "support fraction must lie in (0, 1]",
            });
        }
        let total = self.state_space()?;
        // Allow for rounding in fractions like 1/256.
        if f * (total as f64) < 1.0 - 1e-12 {
            return Err(Error::ConfigInvalid {
                reason: "support fraction selects no cells",
            });
        }
        Ok(())
    }

    fn specs(&self) -> Vec<VariableSpec> {
        self.cardinalities
            .iter()
            .enumerate()
            .map(|(i, &c)| VariableSpec::new(format!("X{}", i + 1), c))
            .collect()
    }
}

/// Decodes a mixed-radix index (last variable fastest) into states.
fn decode(mut index: u64, cardinalities: &[u32]) -> Vec<u32> {
    let mut states = alloc::vec![0u32; cardinalities.len()];
    for (slot, &c) in states.iter_mut().zip(cardinalities).rev() {
        *slot = (index % u64::from(c)) as u32;
        index /= u64::from(c);
    }
    states
}

/// Four binary variables, uniform on the eight configurations
/// `0000, 1000, 1100, 1110, 1111, 0111, 0011, 0001`.
///
/// It is globally Markov with respect to the 4-cycle `X1–X2–X3–X4–X1` even
/// though half of the state space has probability zero.
pub fn moussouris() -> JointDistribution {
    const SUPPORT: [[u32; 4]; 8] = [
        [0, 0, 0, 0],
        [1, 0, 0, 0],
        [1, 1, 0, 0],
        [1, 1, 1, 0],
        [1, 1, 1, 1],
        [0, 1, 1, 1],
        [0, 0, 1, 1],
        [0, 0, 0, 1],
    ];
    let specs = (1..=4).map(|i| VariableSpec::new(format!("X{i}"), 2)).collect();
    JointDistribution::new(specs, SUPPORT.iter().map(|c| (c.to_vec(), 0.125)))
        .expect("built-in distribution is valid")
}

/// Draws `⌈support_fraction · |Λ|⌉` distinct cells uniformly, gives each an
/// independent weight from `[0.1, 1)`, and normalizes.
pub fn random_distribution(cfg: &GeneratorConfig) -> Result<JointDistribution> {
    let k = cfg.support_size()?;
    let total = cfg.state_space()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let picks = rand::seq::index::sample(&mut rng, total as usize, k);
    let mut raw = BTreeMap::new();
    for idx in picks.iter() {
        let w: f64 = rng.random_range(WEIGHT_RANGE);
        raw.insert(decode(idx as u64, &cfg.cardinalities), w);
    }
    let sum: f64 = raw.values().sum();
    JointDistribution::new(cfg.specs(), raw.into_iter().map(|(c, w)| (c, w / sum)))
}

/// A random distribution projected onto `tree`, so that it factorizes
/// exactly over the tree.
pub fn jt_structured_distribution(
    cfg: &GeneratorConfig,
    tree: &ClusterTree,
) -> Result<JointDistribution> {
    let p = random_distribution(cfg)?;
    tree.project(&p)
}

/// The 8-variable path tree
/// `{1,2,8}–{2,7,8}–{3,7,8}–{4,7,8}–{4,5,7}–{4,5,6}` (1-based names;
/// indices here are 0-based).
pub fn figure3_tree() -> ClusterTree {
    let one_based: [[usize; 3]; 6] = [
        [1, 2, 8],
        [2, 7, 8],
        [3, 7, 8],
        [4, 7, 8],
        [4, 5, 7],
        [4, 5, 6],
    ];
    let clusters = one_based
        .iter()
        .map(|c| c.iter().map(|&v| v - 1).collect())
        .collect();
    ClusterTree::path(clusters).expect("built-in tree is valid")
}

/// A random valid junction tree over `0..n`.
///
/// Clusters are grown one at a time: each new cluster takes a proper subset
/// of an existing cluster as its separator plus at least one unused variable,
/// which keeps the running intersection property and rules out nested
/// clusters. Variables are then relabelled by a random permutation.
pub fn random_cluster_tree(n: usize, max_cluster: usize, seed: u64) -> Result<ClusterTree> {
    if n == 0 || max_cluster == 0 {
        return Err(Error::ConfigInvalid {
            reason: "need at least one variable and cluster size at least 1",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut next = 0usize;
    let first = rng.random_range(1..=max_cluster.min(n));
    let mut clusters: Vec<VarSet> = alloc::vec![(0..first).collect()];
    next += first;
    let mut edges = Vec::new();
    while next < n {
        let parent = rng.random_range(0..clusters.len());
        let mut members: Vec<usize> = clusters[parent].iter().collect();
        members.shuffle(&mut rng);
        let sep_cap = (members.len() - 1).min(max_cluster.saturating_sub(1));
        let sep_len = rng.random_range(0..=sep_cap);
        let fresh_cap = (max_cluster - sep_len).min(n - next).max(1);
        let fresh = rng.random_range(1..=fresh_cap);
        let cluster: VarSet = members[..sep_len]
            .iter()
            .copied()
            .chain(next..next + fresh)
            .collect();
        next += fresh;
        edges.push((parent, clusters.len()));
        clusters.push(cluster);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let clusters = clusters
        .into_iter()
        .map(|c| c.iter().map(|v| perm[v]).collect())
        .collect();
    ClusterTree::new(clusters, edges)
}
