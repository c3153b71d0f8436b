mod common;

use std::collections::BTreeMap;

use markovnet_core::synth::{random_cluster_tree, random_distribution, GeneratorConfig};
use markovnet_core::{discover, pair_kl, precompute, ClusterTree, JointDistribution, UndirectedGraph, VarSet};
use proptest::prelude::*;

use common::*;

fn config(max_n: usize) -> impl Strategy<Value = GeneratorConfig> {
    (
        prop::collection::vec(prop_oneof![Just(2u32), Just(3u32)], 2..=max_n),
        prop_oneof![Just(0.3), Just(0.7), Just(1.0)],
        any::<u64>(),
    )
        .prop_map(|(cardinalities, support_fraction, seed)| GeneratorConfig {
            cardinalities,
            support_fraction,
            seed,
        })
}

fn dist(max_n: usize) -> impl Strategy<Value = JointDistribution> {
    config(max_n).prop_map(|cfg| random_distribution(&cfg).unwrap())
}

fn dist_and_tree(max_n: usize) -> impl Strategy<Value = (JointDistribution, ClusterTree)> {
    (config(max_n), 1usize..=4, any::<u64>()).prop_map(|(cfg, k, seed)| {
        let tree = random_cluster_tree(cfg.n(), k, seed).unwrap();
        (random_distribution(&cfg).unwrap(), tree)
    })
}

fn info_table(p: &JointDistribution) -> BTreeMap<VarSet, f64> {
    subsets(p.scope().len())
        .into_iter()
        .map(|s| {
            let v = p.information_content(&s).unwrap();
            (s, v)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn marginals_are_normalized_and_consistent(p in dist(5)) {
        let all = subsets(p.scope().len());
        for b in all.iter().filter(|s| !s.is_empty()) {
            let pb = p.marginalize(b).unwrap();
            prop_assert!((pb.total() - 1.0).abs() < 1e-9);
            for a in all.iter().filter(|s| !s.is_empty() && s.is_subset(b)) {
                let direct = p.marginalize(a).unwrap();
                let nested = pb.marginalize(a).unwrap();
                prop_assert_eq!(direct.support_size(), nested.support_size());
                for (cell, pr) in direct.cells() {
                    prop_assert!((nested.prob(cell) - pr).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn entropy_is_bounded(p in dist(6)) {
        let h = p.entropy();
        let max: f64 = p.specs().iter().map(|s| (s.cardinality as f64).log2()).sum();
        prop_assert!(h >= -1e-9 && h <= max + 1e-9);
    }

    #[test]
    fn information_content_matches_dense_oracle_and_is_nonnegative(p in dist(5)) {
        for (set, v) in info_table(&p) {
            prop_assert!(v >= -1e-9, "{} -> {}", set, v);
            prop_assert!((v - brute_info(&p, set.as_slice())).abs() < 1e-9);
        }
    }

    #[test]
    fn information_content_is_supermodular(p in dist(6)) {
        let table = info_table(&p);
        for (a, ia) in &table {
            for (b, ib) in &table {
                let lhs = table[&a.union(b)] + table[&a.intersection(b)];
                prop_assert!(lhs >= ia + ib - 1e-9, "A={} B={}", a, b);
            }
        }
    }

    #[test]
    fn disjoint_sets_kl_identity(p in dist(5), split in any::<u32>()) {
        let n = p.scope().len();
        // Assign each variable to C1, C2 or neither.
        let side = |i: usize| (split >> (2 * i)) % 3;
        let c1: VarSet = (0..n).filter(|&i| side(i) == 0).collect();
        let c2: VarSet = (0..n).filter(|&i| side(i) == 1).collect();
        prop_assume!(!c1.is_empty() && !c2.is_empty());
        let u = c1.union(&c2);
        let joint = p.marginalize(&u).unwrap();
        let m1 = dense_marginal(&p, c1.as_slice());
        let m2 = dense_marginal(&p, c2.as_slice());
        let mut kl = 0.0;
        for (cell, pr) in joint.cells() {
            let pick = |set: &VarSet| -> Vec<u32> {
                set.iter().map(|v| cell[u.position(v).unwrap()]).collect()
            };
            kl += pr * (pr / (m1[&pick(&c1)] * m2[&pick(&c2)])).log2();
        }
        let ic = |s: &VarSet| p.information_content(s).unwrap();
        prop_assert!((kl - (ic(&u) - ic(&c1) - ic(&c2))).abs() < 1e-9);
    }

    #[test]
    fn kl_nonnegative_and_zero_on_identity(p in dist(4), seed in any::<u64>()) {
        prop_assert_eq!(p.kl_divergence(&p).unwrap(), 0.0);
        let cards: Vec<u32> = p.specs().iter().map(|s| s.cardinality).collect();
        let q = random_distribution(&GeneratorConfig { cardinalities: cards, support_fraction: 1.0, seed }).unwrap();
        let kl = p.kl_divergence(&q).unwrap();
        prop_assert!(kl >= -1e-12);
        let differ = p.cells().any(|(c, pr)| (q.prob(c) - pr).abs() > 1e-12) || p.support_size() != q.support_size();
        prop_assert!(differ == (kl > 1e-12) || kl.abs() < 1e-9);
    }

    #[test]
    fn conditional_independence_matches_dense_oracle(p in dist(4), split in any::<u32>()) {
        let n = p.scope().len();
        let side = |i: usize| (split >> (2 * i)) % 4;
        let sets: Vec<VarSet> = (0..3).map(|k| (0..n).filter(|&i| side(i) == k).collect()).collect();
        prop_assume!(!sets[0].is_empty() && !sets[1].is_empty());
        let fast = p.conditional_independence(&sets[0], &sets[1], &sets[2], 1e-12).unwrap();
        prop_assert_eq!(fast, brute_ci(&p, &sets[0], &sets[1], &sets[2], 1e-12));
    }

    #[test]
    fn projection_properties((p, tree) in dist_and_tree(6)) {
        let pj = tree.project(&p).unwrap();
        prop_assert!((pj.total() - 1.0).abs() < 1e-9);
        pj.validate().unwrap();

        // Same cells as the dense product formula.
        let dense = brute_projection(&p, &tree);
        prop_assert_eq!(dense.len(), pj.support_size());
        for (cell, pr) in pj.cells() {
            prop_assert!((dense[cell] - pr).abs() < 1e-9);
        }

        // Support containment.
        for (cell, _) in p.cells() {
            prop_assert!(pj.prob(cell) > 0.0);
        }

        // KL via information contents agrees with direct evaluation.
        let decomposed = tree.kl_via_decomposition(&p).unwrap();
        prop_assert!(decomposed >= -1e-9);
        prop_assert!((decomposed - p.kl_divergence(&pj).unwrap()).abs() < 1e-9);
        prop_assert!((decomposed - brute_kl(&p, &dense)).abs() < 1e-9);

        // Idempotence, and the weight equals I(V) once P factorizes.
        let again = tree.project(&pj).unwrap();
        for (cell, pr) in pj.cells() {
            prop_assert!((again.prob(cell) - pr).abs() < 1e-9);
        }
        prop_assert!(tree.kl_via_decomposition(&pj).unwrap().abs() < 1e-9);
        let full = pj.information_content(pj.scope()).unwrap();
        prop_assert!((tree.weight(&pj).unwrap() - full).abs() < 1e-9);

        let total: usize = tree.separator_multiplicities().values().sum();
        prop_assert_eq!(total, tree.clusters().len() - 1);
    }

    #[test]
    fn cache_invariants(p in dist(6)) {
        let c = precompute(&p).unwrap();
        let n = p.scope().len();
        prop_assert_eq!(c.minus_one_entries().count(), n);
        prop_assert_eq!(c.minus_two_entries().count(), n * (n - 1) / 2);
        for (i, v) in c.minus_one_entries() {
            prop_assert!(v >= -1e-9);
            prop_assert!(c.full() >= v - 1e-9);
            prop_assert!((v - p.information_content(&p.scope().without(i)).unwrap()).abs() < 1e-9);
        }
        for ((i, j), v) in c.minus_two_entries() {
            prop_assert!(v >= -1e-9);
            let rest = p.scope().without(i).without(j);
            prop_assert!((v - p.information_content(&rest).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn pair_kl_matches_two_cluster_projection(p in dist(6)) {
        let c = precompute(&p).unwrap();
        let n = p.scope().len();
        prop_assume!(n >= 3);
        let v = p.scope().clone();
        for i in 0..n {
            for j in i + 1..n {
                let kl = pair_kl(&c, i, j).unwrap();
                prop_assert!(kl >= 0.0);
                let tree = ClusterTree::path(vec![v.without(i), v.without(j)]).unwrap();
                let direct = p.kl_divergence(&tree.project(&p).unwrap()).unwrap();
                prop_assert!((kl - direct).abs() < 1e-9, "({}, {}): {} vs {}", i, j, kl, direct);
            }
        }
    }

    #[test]
    fn pair_kl_zero_iff_conditionally_independent(p in dist(5)) {
        let c = precompute(&p).unwrap();
        let v = p.scope().clone();
        for ((i, j), _) in c.minus_two_entries() {
            let rest = v.without(i).without(j);
            let (a, b) = (VarSet::singleton(i), VarSet::singleton(j));
            let zero = pair_kl(&c, i, j).unwrap() <= 1e-9;
            prop_assert_eq!(zero, p.conditional_independence(&a, &b, &rest, 1e-9).unwrap());
            prop_assert_eq!(zero, brute_ci(&p, &a, &b, &rest, 1e-9));
        }
    }

    #[test]
    fn discovery_is_sound_for_projected_distributions((p, tree) in dist_and_tree(6)) {
        let pj = tree.project(&p).unwrap();
        prop_assume!(pj.scope().len() >= 2);
        let found = discover(&pj, 1e-9).unwrap().graph;
        let jt = UndirectedGraph::from_junction_tree(&tree);
        for (i, j) in found.edges() {
            prop_assert!(jt.has_edge(i, j));
        }
        if tree.is_saturated(&pj, 1e-9).unwrap() {
            prop_assert_eq!(found, jt);
        }
    }

    #[test]
    fn graph_separation_implies_independence((p, tree) in dist_and_tree(5), split in any::<u32>()) {
        let pj = tree.project(&p).unwrap();
        let n = pj.scope().len();
        prop_assume!(n >= 3);
        let g = discover(&pj, 1e-9).unwrap().graph;
        let side = |i: usize| (split >> (2 * i)) % 4;
        let sets: Vec<VarSet> = (0..3).map(|k| (0..n).filter(|&i| side(i) == k).collect()).collect();
        prop_assume!(!sets[0].is_empty() && !sets[1].is_empty());
        let (a, b, c) = (&sets[0], &sets[1], &sets[2]);
        let sep = g.separates(a, b, c).unwrap();
        prop_assert_eq!(sep, g.separates(b, a, c).unwrap());
        if sep {
            prop_assert!(pj.conditional_independence(a, b, c, 1e-9).unwrap());
            let rest: VarSet = (0..n).filter(|&i| side(i) == 3).collect();
            let extra = rest.iter().next();
            if let Some(extra) = extra {
                prop_assert!(g.separates(a, b, &c.union(&VarSet::singleton(extra))).unwrap());
            }
        }
    }
}

#[test]
fn seed_stability() {
    let cfg = GeneratorConfig::uniform(5, 3, 0.4, 2024);
    let a = random_distribution(&cfg).unwrap();
    let b = random_distribution(&cfg).unwrap();
    let cells_a: Vec<_> = a.cells().map(|(c, p)| (c.to_vec(), p.to_bits())).collect();
    let cells_b: Vec<_> = b.cells().map(|(c, p)| (c.to_vec(), p.to_bits())).collect();
    assert_eq!(cells_a, cells_b);
}
