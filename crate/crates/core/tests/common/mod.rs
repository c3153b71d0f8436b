//! Dense brute-force oracles. Everything here enumerates the full Cartesian
//! product and reads probabilities cell by cell with `prob`, so it shares no
//! code path with marginalization, projection or the information-content
//! shortcuts it is used to check.

#![allow(dead_code)]

use std::collections::BTreeMap;

use markovnet_core::{ClusterTree, JointDistribution, VarSet};

pub fn cardinalities(p: &JointDistribution) -> Vec<u32> {
    p.scope().iter().map(|i| p.specs()[i].cardinality).collect()
}

/// Every full assignment, last variable fastest.
pub fn all_states(cards: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &c in cards {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..c).map(move |s| {
                    let mut v = prefix.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

/// Dense marginal over `vars` (indices into a scope `0..n`), zeros kept.
pub fn dense_marginal(p: &JointDistribution, vars: &[usize]) -> BTreeMap<Vec<u32>, f64> {
    let mut m = BTreeMap::new();
    for x in all_states(&cardinalities(p)) {
        let key: Vec<u32> = vars.iter().map(|&v| x[v]).collect();
        *m.entry(key).or_insert(0.0) += p.prob(&x);
    }
    m
}

pub fn dense_entropy(m: &BTreeMap<Vec<u32>, f64>) -> f64 {
    m.values()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

pub fn brute_info(p: &JointDistribution, vars: &[usize]) -> f64 {
    if vars.len() < 2 {
        return 0.0;
    }
    let singles: f64 = vars
        .iter()
        .map(|&v| dense_entropy(&dense_marginal(p, &[v])))
        .sum();
    singles - dense_entropy(&dense_marginal(p, vars))
}

/// `Π_C P(x_C) / Π_e P(x_{S_e})` evaluated on every full assignment.
pub fn brute_projection(p: &JointDistribution, tree: &ClusterTree) -> BTreeMap<Vec<u32>, f64> {
    let clusters: Vec<(Vec<usize>, BTreeMap<Vec<u32>, f64>)> = tree
        .clusters()
        .iter()
        .map(|c| (c.as_slice().to_vec(), dense_marginal(p, c.as_slice())))
        .collect();
    let seps: Vec<(Vec<usize>, BTreeMap<Vec<u32>, f64>)> = tree
        .separators()
        .iter()
        .map(|s| (s.as_slice().to_vec(), dense_marginal(p, s.as_slice())))
        .collect();
    let mut out = BTreeMap::new();
    for x in all_states(&cardinalities(p)) {
        let look = |(vars, m): &(Vec<usize>, BTreeMap<Vec<u32>, f64>)| {
            m[&vars.iter().map(|&v| x[v]).collect::<Vec<_>>()]
        };
        let num: f64 = clusters.iter().map(look).product();
        if num > 0.0 {
            let den: f64 = seps.iter().map(look).product();
            out.insert(x, num / den);
        }
    }
    out
}

/// `KL(p || q)` over the dense state space; panics if q misses p's support.
pub fn brute_kl(p: &JointDistribution, q: &BTreeMap<Vec<u32>, f64>) -> f64 {
    all_states(&cardinalities(p))
        .into_iter()
        .filter(|x| p.prob(x) > 0.0)
        .map(|x| {
            let px = p.prob(&x);
            let qx = q.get(&x).copied().unwrap_or(0.0);
            assert!(qx > 0.0, "support violation at {x:?}");
            px * (px / qx).log2()
        })
        .sum()
}

/// `P(abc)P(c) = P(ac)P(bc)` on every assignment of `A∪B∪C`.
pub fn brute_ci(p: &JointDistribution, a: &VarSet, b: &VarSet, c: &VarSet, tol: f64) -> bool {
    let abc = a.union(b).union(c);
    let vars = abc.as_slice();
    let cards: Vec<u32> = vars.iter().map(|&v| p.specs()[v].cardinality).collect();
    let m_abc = dense_marginal(p, vars);
    let m = |set: &VarSet| dense_marginal(p, set.as_slice());
    let (m_ac, m_bc, m_c) = (m(&a.union(c)), m(&b.union(c)), m(c));
    all_states(&cards).into_iter().all(|x| {
        let part = |set: &VarSet| -> Vec<u32> {
            set.iter()
                .map(|v| x[vars.iter().position(|&w| w == v).unwrap()])
                .collect()
        };
        let pc = if c.is_empty() { 1.0 } else { m_c[&part(c)] };
        let lhs = m_abc[&x] * pc;
        let rhs = m_ac[&part(&a.union(c))] * m_bc[&part(&b.union(c))];
        (lhs - rhs).abs() <= tol
    })
}

/// All subsets of `0..n` as bitmasks turned into sets.
pub fn subsets(n: usize) -> Vec<VarSet> {
    (0u32..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect()
}
