use alloc::vec::Vec;
use core::fmt;

/// A finite set of variable indices, kept sorted and free of duplicates.
///
/// Ordering is lexicographic on the sorted elements, which gives reports and
/// maps keyed by sets a stable order.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarSet(Vec<usize>);

impl VarSet {
    /// The empty set.
    pub fn empty() -> Self {
        VarSet(Vec::new())
    }

    /// `{0, 1, ..., n-1}`.
    pub fn range(n: usize) -> Self {
        VarSet((0..n).collect())
    }

    pub fn singleton(i: usize) -> Self {
        VarSet(alloc::vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Position of `i` within the sorted set.
    pub fn position(&self, i: usize) -> Option<usize> {
        self.0.binary_search(&i).ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VarSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    pub fn is_disjoint(&self, other: &VarSet) -> bool {
        self.iter().all(|i| !other.contains(i))
    }

    pub fn union(&self, other: &VarSet) -> VarSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn intersection(&self, other: &VarSet) -> VarSet {
        VarSet(self.iter().filter(|&i| other.contains(i)).collect())
    }

    pub fn difference(&self, other: &VarSet) -> VarSet {
        VarSet(self.iter().filter(|&i| !other.contains(i)).collect())
    }

    /// Copy of the set with `i` removed.
    pub fn without(&self, i: usize) -> VarSet {
        VarSet(self.iter().filter(|&k| k != i).collect())
    }
}

impl FromIterator<usize> for VarSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VarSet(v)
    }
}

impl From<&[usize]> for VarSet {
    fn from(s: &[usize]) -> Self {
        s.iter().copied().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VarSet {
    fn from(s: [usize; N]) -> Self {
        s.into_iter().collect()
    }
}

impl From<Vec<usize>> for VarSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}
