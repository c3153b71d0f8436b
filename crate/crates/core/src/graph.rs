//! Undirected graphs over variable indices.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::{ClusterTree, Error, Result, VarSet};

/// Simple undirected graph. Edges are stored as `(min, max)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UndirectedGraph {
    vertices: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize)>,
}

impl UndirectedGraph {
    /// Graph on `vertices` with no edges.
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Self {
        UndirectedGraph {
            vertices: vertices.into_iter().collect(),
            edges: BTreeSet::new(),
        }
    }

    /// Complete graph on `vertices`.
    pub fn complete(vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut g = UndirectedGraph::new(vertices);
        let vs: Vec<usize> = g.vertices.iter().copied().collect();
        for (k, &i) in vs.iter().enumerate() {
            for &j in &vs[k + 1..] {
                g.edges.insert((i, j));
            }
        }
        g
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i == j {
            return Err(Error::SelfLoop { vertex: i });
        }
        for v in [i, j] {
            if !self.vertices.contains(&v) {
                return Err(Error::UnknownVertex { vertex: v });
            }
        }
        self.edges.insert((i.min(j), i.max(j)));
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().copied()
    }

    /// Edges as `(i, j)` with `i < j`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn neighbors(&self, i: usize) -> Result<BTreeSet<usize>> {
        if !self.vertices.contains(&i) {
            return Err(Error::UnknownVertex { vertex: i });
        }
        Ok(self
            .edges
            .iter()
            .filter_map(|&(a, b)| match (a == i, b == i) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect())
    }

    /// True iff every path from `a` to `b` passes through `c`.
    ///
    /// When no path joins `a` and `b` at all the answer is trivially true.
    pub fn separates(&self, a: &VarSet, b: &VarSet, c: &VarSet) -> Result<bool> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptyABSet);
        }
        if !a.is_disjoint(b) || !a.is_disjoint(c) || !b.is_disjoint(c) {
            return Err(Error::OverlappingSets);
        }
        for v in a.iter().chain(b.iter()).chain(c.iter()) {
            if !self.vertices.contains(&v) {
                return Err(Error::UnknownVertex { vertex: v });
            }
        }
        let mut seen: BTreeSet<usize> = a.iter().collect();
        let mut queue: VecDeque<usize> = a.iter().collect();
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u)? {
                if c.contains(v) || !seen.insert(v) {
                    continue;
                }
                if b.contains(v) {
                    return Ok(false);
                }
                queue.push_back(v);
            }
        }
        Ok(true)
    }

    /// Graph joining every two variables that share a cluster.
    pub fn from_junction_tree(tree: &ClusterTree) -> Self {
        let mut g = UndirectedGraph::new(tree.variables().iter());
        for c in tree.clusters() {
            let vs = c.as_slice();
            for (k, &i) in vs.iter().enumerate() {
                for &j in &vs[k + 1..] {
                    g.edges.insert((i, j));
                }
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::figure3_tree;
    use alloc::vec;

    fn cycle() -> UndirectedGraph {
        let mut g = UndirectedGraph::new(0..4);
        for (i, j) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
            g.add_edge(i, j).unwrap();
        }
        g
    }

    fn s<const N: usize>(v: [usize; N]) -> VarSet {
        VarSet::from(v)
    }

    #[test]
    fn neighbors() {
        assert_eq!(cycle().neighbors(0).unwrap().into_iter().collect::<Vec<_>>(), vec![1, 3]);
        assert!(UndirectedGraph::new(0..3).neighbors(1).unwrap().is_empty());
        assert_eq!(cycle().neighbors(4), Err(Error::UnknownVertex { vertex: 4 }));
        let g = UndirectedGraph::from_junction_tree(&figure3_tree());
        // Variable 6 (index 5) only shares the last cluster.
        assert_eq!(g.neighbors(5).unwrap().into_iter().collect::<Vec<_>>(), vec![3, 4]);
    }

    #[test]
    fn separation_on_the_cycle() {
        let g = cycle();
        assert!(g.separates(&s([0]), &s([2]), &s([1, 3])).unwrap());
        assert!(!g.separates(&s([0]), &s([2]), &s([1])).unwrap());
        assert!(!g.separates(&s([0]), &s([1]), &VarSet::empty()).unwrap());
        assert_eq!(g.separates(&s([0]), &s([0]), &VarSet::empty()), Err(Error::OverlappingSets));
        assert_eq!(g.separates(&VarSet::empty(), &s([0]), &VarSet::empty()), Err(Error::EmptyABSet));
    }

    #[test]
    fn disconnected_sets_are_separated() {
        let g = UndirectedGraph::new(0..3);
        assert!(g.separates(&s([0]), &s([2]), &VarSet::empty()).unwrap());
    }

    #[test]
    fn junction_tree_graphs() {
        let t = ClusterTree::path(vec![s([0, 1, 3]), s([1, 2, 3])]).unwrap();
        let g = UndirectedGraph::from_junction_tree(&t);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 3), (1, 2), (1, 3), (2, 3)]);

        let tri = UndirectedGraph::from_junction_tree(&ClusterTree::single(s([0, 1, 2])).unwrap());
        assert_eq!(tri, UndirectedGraph::complete(0..3));

        assert_eq!(UndirectedGraph::from_junction_tree(&figure3_tree()).edge_count(), 13);
    }

    #[test]
    fn edge_errors() {
        let mut g = UndirectedGraph::new(0..2);
        assert_eq!(g.add_edge(1, 1), Err(Error::SelfLoop { vertex: 1 }));
        assert_eq!(g.add_edge(0, 2), Err(Error::UnknownVertex { vertex: 2 }));
        g.add_edge(1, 0).unwrap();
        assert!(g.has_edge(0, 1));
    }
}
