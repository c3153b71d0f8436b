//! Exact discovery of the pairwise Markov network of a known distribution.
//!
//! For a pair `i, j` let `C1 = V∖{i}` and `C2 = V∖{j}`. The two clusters
//! form a junction tree with separator `V∖{i,j}`, and
//!
//! ```text
//! KL(P || P_J) = I(V) − I(V∖{i}) − I(V∖{j}) + I(V∖{i,j})
//! ```
//!
//! which is zero exactly when `X_i ⊥ X_j` given all other variables. So the
//! whole graph follows from `1 + n + n(n−1)/2` information contents.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::{Error, JointDistribution, Result, UndirectedGraph, VarSet, NEGATIVE_SLACK};

/// Information contents of the full scope and of every scope with one or two
/// variables removed.
#[derive(Debug, Clone, PartialEq)]
pub struct InfoContentCache {
    variables: VarSet,
    full: f64,
    minus_one: BTreeMap<usize, f64>,
    minus_two: BTreeMap<(usize, usize), f64>,
}

impl InfoContentCache {
    pub fn variables(&self) -> &VarSet {
        &self.variables
    }

    /// `I(V)`.
    pub fn full(&self) -> f64 {
        self.full
    }

    /// `I(V∖{i})`.
    pub fn minus_one(&self, i: usize) -> Option<f64> {
        self.minus_one.get(&i).copied()
    }

    /// `I(V∖{i,j})`, in either argument order.
    pub fn minus_two(&self, i: usize, j: usize) -> Option<f64> {
        self.minus_two.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn minus_one_entries(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.minus_one.iter().map(|(&i, &v)| (i, v))
    }

    /// Entries keyed by `(i, j)` with `i < j`, in lexicographic order.
    pub fn minus_two_entries(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.minus_two.iter().map(|(&k, &v)| (k, v))
    }
}

/// KL test outcome for one pair of variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairReport {
    /// `(i, j)` with `i < j`.
    pub pair: (usize, usize),
    pub kl: f64,
    pub adjacent: bool,
}

/// Everything produced by [`discover`].
#[derive(Debug, Clone, PartialEq)]
pub struct Discovery {
    pub cache: InfoContentCache,
    /// One report per pair, lexicographic by pair.
    pub pairs: Vec<PairReport>,
    pub graph: UndirectedGraph,
}

fn checked(what: &'static str, value: f64) -> Result<f64> {
    if value < -NEGATIVE_SLACK || value.is_nan() {
        return Err(Error::NumericalIntegrity { what, value });
    }
    Ok(value)
}

/// Computes every information content the pair test needs.
///
/// Each `(n−1)`-marginal is taken from `p` once; each `(n−2)`-marginal is
/// taken from the smaller `(n−1)`-marginal rather than from `p`. Single
/// variable entropies are computed once and shared by all subsets.
pub fn precompute(p: &JointDistribution) -> Result<InfoContentCache> {
    let vars = p.scope().clone();
    let n = vars.len();
    if n < 2 {
        return Err(Error::ScopeTooSmall { n });
    }
    let h: Vec<f64> = p.singleton_entropies();
    let h_of = |set: &VarSet| -> f64 {
        set.iter()
            .map(|i| h[vars.position(i).unwrap()])
            .sum::<f64>()
    };
    // Information content of a marginal of `p` over `set`.
    let info = |m: &JointDistribution| -> f64 {
        if m.scope().len() < 2 {
            0.0
        } else {
            h_of(m.scope()) - m.entropy()
        }
    };

    let full = checked("I(V)", h_of(&vars) - p.entropy())?;
    let mut minus_one = BTreeMap::new();
    let mut minus_two = BTreeMap::new();
    for (k, i) in vars.iter().enumerate() {
        let m_i = p.marginalize(&vars.without(i))?;
        minus_one.insert(i, checked("I(V\\{i})", info(&m_i))?);
        for j in vars.iter().skip(k + 1) {
            let rest = m_i.scope().without(j);
            let v = if rest.len() < 2 {
                0.0
            } else {
                info(&m_i.marginalize(&rest)?)
            };
            minus_two.insert((i, j), checked("I(V\\{i,j})", v)?);
        }
    }
    Ok(InfoContentCache {
        variables: vars,
        full,
        minus_one,
        minus_two,
    })
}

/// `KL(P || P_J)` for the two-cluster tree `V∖{i}`, `V∖{j}`.
///
/// Values in `[−1e-9, 0)` are reported as 0; anything more negative is a
/// numerical integrity error.
pub fn pair_kl(cache: &InfoContentCache, i: usize, j: usize) -> Result<f64> {
    let (Some(mi), Some(mj), Some(mij)) =
        (cache.minus_one(i), cache.minus_one(j), cache.minus_two(i, j))
    else {
        return Err(Error::BadPair { i, j });
    };
    if i == j {
        return Err(Error::BadPair { i, j });
    }
    let kl = checked("pair KL", cache.full - mi - mj + mij)?;
    Ok(kl.max(0.0))
}

/// Runs the pair test on every pair: `i` and `j` are adjacent iff their pair
/// KL exceeds `tol`.
pub fn discover(p: &JointDistribution, tol: f64) -> Result<Discovery> {
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance { tol });
    }
    let cache = precompute(p)?;
    let mut graph = UndirectedGraph::new(cache.variables.iter());
    let mut pairs = Vec::with_capacity(cache.minus_two.len());
    for &(i, j) in cache.minus_two.keys() {
        let kl = pair_kl(&cache, i, j)?;
        let adjacent = kl > tol;
        if adjacent {
            graph.add_edge(i, j)?;
        }
        pairs.push(PairReport {
            pair: (i, j),
            kl,
            adjacent,
        });
    }
    Ok(Discovery {
        cache,
        pairs,
        graph,
    })
}
