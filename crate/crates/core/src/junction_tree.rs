//! Cluster trees, the running intersection property, and junction tree
//! distributions built from marginals of a joint distribution.
//!
//! The junction tree distribution of `P` over a tree with clusters `C` and
//! edge separators `S_e` is
//!
//! ```text
//! P_J(x) = Π_C P(x_C) / Π_e P(x_{S_e})
//! ```
//!
//! A separator set shared by `k` tree edges therefore appears with exponent
//! `k`. Its weight is `Σ_C I(C) − Σ_e I(S_e)`, and `KL(P || P_J)` equals
//! `I(V)` minus that weight.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::discovery;
use crate::{Error, JointDistribution, Result, VarSet};

/// Deviation of the raw `P_J` mass from 1 beyond which the tree is rejected.
pub const PROJECTION_TOLERANCE: f64 = 1e-6;

/// A junction tree: clusters joined by tree edges, each edge labelled with
/// the intersection of its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterTree {
    clusters: Vec<VarSet>,
    edges: Vec<(usize, usize)>,
    separators: Vec<VarSet>,
}

impl ClusterTree {
    /// Builds a tree from clusters and 0-based cluster edges, rejecting
    /// anything that is not a valid junction tree.
    pub fn new(clusters: Vec<VarSet>, edges: Vec<(usize, usize)>) -> Result<Self> {
        validate_running_intersection(&clusters, &edges)?;
        let separators = edges
            .iter()
            .map(|&(a, b)| clusters[a].intersection(&clusters[b]))
            .collect();
        Ok(ClusterTree {
            clusters,
            edges,
            separators,
        })
    }

    /// Clusters joined in a path, in the given order.
    pub fn path(clusters: Vec<VarSet>) -> Result<Self> {
        let edges = (1..clusters.len()).map(|i| (i - 1, i)).collect();
        ClusterTree::new(clusters, edges)
    }

    /// The one-cluster tree over `vars`.
    pub fn single(vars: VarSet) -> Result<Self> {
        ClusterTree::new(alloc::vec![vars], Vec::new())
    }

    pub fn clusters(&self) -> &[VarSet] {
        &self.clusters
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Separator of each edge, aligned with [`ClusterTree::edges`].
    pub fn separators(&self) -> &[VarSet] {
        &self.separators
    }

    /// Union of all clusters.
    pub fn variables(&self) -> VarSet {
        self.clusters.iter().flat_map(|c| c.iter()).collect()
    }

    /// Re-runs [`validate_running_intersection`] on this tree.
    pub fn validate_running_intersection(&self) -> Result<()> {
        validate_running_intersection(&self.clusters, &self.edges)
    }

    /// Breadth-first numbering from cluster 0: each cluster after the first
    /// is listed with `(parent, edge)`, which is the numbering under which every
    /// cluster meets the union of its predecessors exactly in its separator.
    pub fn rip_ordering(&self) -> Vec<(usize, Option<(usize, usize)>)> {
        bfs_order(self.clusters.len(), &self.edges)
    }

    /// Number of tree edges carrying each distinct separator set, i.e. the
    /// exponent `ν_S − 1` of that separator in the junction tree product.
    pub fn separator_multiplicities(&self) -> BTreeMap<VarSet, usize> {
        let mut counts = BTreeMap::new();
        for s in &self.separators {
            *counts.entry(s.clone()).or_insert(0) += 1;
        }
        counts
    }

    fn check_covers(&self, p: &JointDistribution) -> Result<()> {
        if &self.variables() != p.scope() {
            return Err(Error::ScopeMismatch);
        }
        Ok(())
    }

    /// The junction tree distribution of `p` over this tree.
    ///
    /// Only assignments on which every cluster marginal is positive are
    /// produced; they are found by joining cluster marginals along the tree,
    /// so the full state space is never enumerated.
    pub fn project(&self, p: &JointDistribution) -> Result<JointDistribution> {
        self.check_covers(p)?;
        let scope = p.scope();
        let n = scope.len();
        let order = bfs_order(self.clusters.len(), &self.edges);
        let marginal = |set: &VarSet| p.marginalize(set);
        let positions = |set: &VarSet| -> Vec<usize> {
            set.iter().map(|i| scope.position(i).unwrap()).collect()
        };

        const UNSET: u32 = u32::MAX;
        let (root, _) = order[0];
        let root_pos = positions(&self.clusters[root]);
        let mut rows: Vec<(Vec<u32>, f64)> = marginal(&self.clusters[root])?
            .cells()
            .map(|(cell, pr)| {
                let mut row = alloc::vec![UNSET; n];
                for (&pos, &s) in root_pos.iter().zip(cell) {
                    row[pos] = s;
                }
                (row, pr)
            })
            .collect();

        for &(child, parent) in &order[1..] {
            let (_, edge) = parent.expect("non-root clusters have a parent");
            let sep = &self.separators[edge];
            let cluster = &self.clusters[child];
            let m = marginal(cluster)?;

            // Child cells grouped by their separator states.
            let sep_in_child: Vec<usize> = sep
                .iter()
                .map(|i| cluster.position(i).unwrap())
                .collect();
            let mut by_sep: BTreeMap<Vec<u32>, Vec<(&[u32], f64)>> = BTreeMap::new();
            for (cell, pr) in m.cells() {
                let key = sep_in_child.iter().map(|&k| cell[k]).collect();
                by_sep.entry(key).or_default().push((cell, pr));
            }
            let sep_marginal = if sep.is_empty() {
                None
            } else {
                Some(marginal(sep)?)
            };

            let sep_pos = positions(sep);
            let child_pos = positions(cluster);
            let mut next = Vec::new();
            for (row, pr) in &rows {
                let key: Vec<u32> = sep_pos.iter().map(|&pos| row[pos]).collect();
                let Some(matches) = by_sep.get(&key) else {
                    continue;
                };
                let ps = match &sep_marginal {
                    Some(sm) => sm.prob(&key),
                    None => 1.0,
                };
                for &(cell, pc) in matches {
                    let mut r = row.clone();
                    for (&pos, &s) in child_pos.iter().zip(cell) {
                        r[pos] = s;
                    }
                    next.push((r, pr * pc / ps));
                }
            }
            rows = next;
        }

        let mut table: BTreeMap<Vec<u32>, f64> = rows.into_iter().collect();
        let sum = table.values().sum::<f64>();
        if !sum.is_finite() || (sum - 1.0).abs() > PROJECTION_TOLERANCE {
            return Err(Error::NotNormalizedResult { sum });
        }
        for v in table.values_mut() {
            *v /= sum;
        }
        Ok(JointDistribution::from_parts(
            p.shared_specs().clone(),
            scope.clone(),
            table,
        ))
    }

    /// Weight of the tree for `p`: `Σ_C I(C) − Σ_e I(S_e)`.
    pub fn weight(&self, p: &JointDistribution) -> Result<f64> {
        self.check_covers(p)?;
        let mut w = 0.0;
        for c in &self.clusters {
            w += p.information_content(c)?;
        }
        for s in &self.separators {
            w -= p.information_content(s)?;
        }
        Ok(w)
    }

    /// `KL(P || P_J)` computed from information contents, `I(V) − weight`.
    ///
    /// The value is returned unclamped; it may be a rounding-level negative.
    pub fn kl_via_decomposition(&self, p: &JointDistribution) -> Result<f64> {
        let full = p.information_content(p.scope())?;
        Ok(full - self.weight(p)?)
    }

    /// True iff no two variables sharing a cluster are conditionally
    /// independent given all others, judged by the pair KL exceeding `tol`.
    pub fn is_saturated(&self, p: &JointDistribution, tol: f64) -> Result<bool> {
        self.check_covers(p)?;
        let mut pairs = BTreeSet::new();
        for c in &self.clusters {
            let vs = c.as_slice();
            for (k, &i) in vs.iter().enumerate() {
                for &j in &vs[k + 1..] {
                    pairs.insert((i, j));
                }
            }
        }
        if pairs.is_empty() {
            return Ok(true);
        }
        let cache = discovery::precompute(p)?;
        for (i, j) in pairs {
            if discovery::pair_kl(&cache, i, j)? <= tol {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Checks that `edges` form a tree on the clusters, that no cluster is
/// contained in another, and that for every pair of clusters their
/// intersection is contained in every cluster on the tree path between them.
pub fn validate_running_intersection(clusters: &[VarSet], edges: &[(usize, usize)]) -> Result<()> {
    let m = clusters.len();
    if m == 0 {
        return Err(Error::NotATree {
            reason: "no clusters",
        });
    }
    if let Some(cluster) = clusters.iter().position(|c| c.is_empty()) {
        return Err(Error::EmptyCluster { cluster });
    }
    if edges.len() + 1 != m {
        return Err(Error::NotATree {
            reason: "edge count must be one less than cluster count",
        });
    }
    for &(a, b) in edges {
        if a >= m || b >= m {
            return Err(Error::NotATree {
                reason: "edge endpoint is not a cluster index",
            });
        }
        if a == b {
            return Err(Error::NotATree {
                reason: "edge joins a cluster to itself",
            });
        }
    }
    let order = bfs_order(m, edges);
    if order.len() != m {
        return Err(Error::NotATree {
            reason: "clusters are not connected",
        });
    }

    for (i, ci) in clusters.iter().enumerate() {
        for (j, cj) in clusters.iter().enumerate() {
            if i != j && ci.is_subset(cj) {
                return Err(Error::ClusterSubsumed {
                    inner: i,
                    inner_set: ci.clone(),
                    outer: j,
                    outer_set: cj.clone(),
                });
            }
        }
    }

    let adj = adjacency(m, edges);
    for a in 0..m {
        // Parent pointers of a search rooted at `a` give every path from `a`.
        let parent = parents_from(a, &adj);
        for b in a + 1..m {
            let shared = clusters[a].intersection(&clusters[b]);
            if shared.is_empty() {
                continue;
            }
            let mut k = parent[b];
            while let Some(via) = k {
                if via == a {
                    break;
                }
                if !shared.is_subset(&clusters[via]) {
                    return Err(Error::RipViolation { a, b, shared, via });
                }
                k = parent[via];
            }
        }
    }
    Ok(())
}

fn adjacency(m: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = alloc::vec![Vec::new(); m];
    for (e, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    adj
}

fn parents_from(root: usize, adj: &[Vec<(usize, usize)>]) -> Vec<Option<usize>> {
    let mut parent = alloc::vec![None; adj.len()];
    let mut seen = alloc::vec![false; adj.len()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    parent
}

/// Clusters reachable from cluster 0 in BFS order, each with
/// `(parent cluster, edge index)`.
fn bfs_order(m: usize, edges: &[(usize, usize)]) -> Vec<(usize, Option<(usize, usize)>)> {
    if m == 0 {
        return Vec::new();
    }
    let adj = adjacency(m, edges);
    let mut seen = alloc::vec![false; m];
    let mut out = Vec::with_capacity(m);
    seen[0] = true;
    out.push((0, None));
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &(v, e) in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                out.push((v, Some((u, e))));
                queue.push_back(v);
            }
        }
    }
    out
}
