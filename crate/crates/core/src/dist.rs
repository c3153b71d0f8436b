//! Sparse discrete joint distributions.
//!
//! A [`JointDistribution`] stores only the cells with positive probability,
//! keyed by the state vector over its scope. Cells iterate in lexicographic
//! order, so every sum below is accumulated in the same order on every run.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::{Error, Result, VarSet};

/// Tolerance on the total mass of a constructed distribution.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// A named discrete variable with states `0..cardinality`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableSpec {
    pub name: String,
    pub cardinality: u32,
}

impl VariableSpec {
    pub fn new(name: impl Into<String>, cardinality: u32) -> Self {
        VariableSpec {
            name: name.into(),
            cardinality,
        }
    }
}

/// States for a (possibly partial) scope of variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Assignment {
    scope: VarSet,
    states: Vec<u32>,
}

impl Assignment {
    /// Pairs `scope` (sorted) with one state per scope position.
    pub fn new(scope: VarSet, states: Vec<u32>) -> Result<Self> {
        if scope.len() != states.len() {
            return Err(Error::ArityMismatch {
                expected: scope.len(),
                found: states.len(),
                cell: states,
            });
        }
        Ok(Assignment { scope, states })
    }

    pub fn scope(&self) -> &VarSet {
        &self.scope
    }

    pub fn states(&self) -> &[u32] {
        &self.states
    }

    /// State of variable `var`, if it is in scope.
    pub fn get(&self, var: usize) -> Option<u32> {
        self.scope.position(var).map(|p| self.states[p])
    }
}

/// A probability table over `scope`, storing strictly positive cells only.
///
/// `specs` describes every variable of the originating model; `scope` picks
/// the ones this table ranges over. Marginals share `specs` with their parent.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    specs: Arc<[VariableSpec]>,
    scope: VarSet,
    table: BTreeMap<Vec<u32>, f64>,
}

fn check_specs(specs: &[VariableSpec]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for s in specs {
        if s.cardinality == 0 {
            return Err(Error::InvalidCardinality {
                name: s.name.clone(),
            });
        }
        if !seen.insert(s.name.as_str()) {
            return Err(Error::DuplicateName {
                name: s.name.clone(),
            });
        }
    }
    Ok(())
}

impl JointDistribution {
    /// Builds a distribution over all of `specs` from `(states, probability)`
    /// cells, validating every invariant.
    pub fn new<I>(specs: Vec<VariableSpec>, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, f64)>,
    {
        check_specs(&specs)?;
        let scope = VarSet::range(specs.len());
        let mut table = BTreeMap::new();
        for (cell, p) in cells {
            check_cell(&specs, &scope, &cell)?;
            if !(p > 0.0) || !p.is_finite() {
                return Err(Error::NonPositiveEntry { cell, value: p });
            }
            if table.contains_key(&cell) {
                return Err(Error::DuplicateAssignment { cell });
            }
            table.insert(cell, p);
        }
        let dist = JointDistribution {
            specs: specs.into(),
            scope,
            table,
        };
        dist.check_normalized(NORMALIZATION_TOLERANCE)?;
        Ok(dist)
    }

    /// Assembles a table the caller has already checked: every key in range,
    /// every value positive.
    pub(crate) fn from_parts(
        specs: Arc<[VariableSpec]>,
        scope: VarSet,
        table: BTreeMap<Vec<u32>, f64>,
    ) -> Self {
        JointDistribution {
            specs,
            scope,
            table,
        }
    }

    /// Re-checks all invariants of the stored table.
    pub fn validate(&self) -> Result<()> {
        check_specs(&self.specs)?;
        for i in self.scope.iter() {
            if i >= self.specs.len() {
                return Err(Error::IndexOutOfScope { index: i });
            }
        }
        for (cell, &p) in &self.table {
            check_cell(&self.specs, &self.scope, cell)?;
            if !(p > 0.0) || !p.is_finite() {
                return Err(Error::NonPositiveEntry {
                    cell: cell.clone(),
                    value: p,
                });
            }
        }
        self.check_normalized(NORMALIZATION_TOLERANCE)
    }

    fn check_normalized(&self, tol: f64) -> Result<()> {
        let sum = self.total();
        if (sum - 1.0).abs() > tol {
            return Err(Error::NotNormalized { sum });
        }
        Ok(())
    }

    pub fn specs(&self) -> &[VariableSpec] {
        &self.specs
    }

    pub(crate) fn shared_specs(&self) -> &Arc<[VariableSpec]> {
        &self.specs
    }

    pub fn scope(&self) -> &VarSet {
        &self.scope
    }

    /// Number of stored (positive) cells.
    pub fn support_size(&self) -> usize {
        self.table.len()
    }

    /// Size of the Cartesian product of the scope's state spaces, saturating
    /// at `u128::MAX`.
    pub fn state_space_size(&self) -> u128 {
        self.scope.iter().fold(1u128, |acc, i| {
            acc.saturating_mul(u128::from(self.specs[i].cardinality))
        })
    }

    /// Sum of stored probabilities.
    pub fn total(&self) -> f64 {
        self.table.values().sum()
    }

    /// Cells in lexicographic order of their state vectors.
    pub fn cells(&self) -> impl Iterator<Item = (&[u32], f64)> + '_ {
        self.table.iter().map(|(k, &p)| (k.as_slice(), p))
    }

    /// Probability of a full cell over `scope`; 0 when absent.
    pub fn prob(&self, states: &[u32]) -> f64 {
        self.table.get(states).copied().unwrap_or(0.0)
    }

    /// Probability of a (possibly partial) assignment, summing out the
    /// variables it leaves free.
    pub fn probability(&self, a: &Assignment) -> Result<f64> {
        if let Some(i) = a.scope().iter().find(|&i| !self.scope.contains(i)) {
            return Err(Error::IndexOutOfScope { index: i });
        }
        if a.scope() == &self.scope {
            return Ok(self.prob(a.states()));
        }
        let positions: Vec<usize> = a
            .scope()
            .iter()
            .map(|i| self.scope.position(i).unwrap())
            .collect();
        Ok(self
            .table
            .iter()
            .filter(|(cell, _)| {
                positions
                    .iter()
                    .zip(a.states())
                    .all(|(&pos, &s)| cell[pos] == s)
            })
            .map(|(_, &p)| p)
            .sum())
    }

    /// Marginal distribution over `subset`.
    pub fn marginalize(&self, subset: &VarSet) -> Result<JointDistribution> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        self.check_in_scope(subset)?;
        if subset == &self.scope {
            return Ok(self.clone());
        }
        let positions: Vec<usize> = subset
            .iter()
            .map(|i| self.scope.position(i).unwrap())
            .collect();
        let mut table = BTreeMap::new();
        for (cell, &p) in &self.table {
            let key: Vec<u32> = positions.iter().map(|&pos| cell[pos]).collect();
            *table.entry(key).or_insert(0.0) += p;
        }
        Ok(JointDistribution::from_parts(
            self.specs.clone(),
            subset.clone(),
            table,
        ))
    }

    pub(crate) fn check_in_scope(&self, set: &VarSet) -> Result<()> {
        match set.iter().find(|&i| !self.scope.contains(i)) {
            Some(index) => Err(Error::IndexOutOfScope { index }),
            None => Ok(()),
        }
    }

    /// Shannon entropy in bits.
    pub fn entropy(&self) -> f64 {
        -self
            .table
            .values()
            .map(|&p| p * libm::log2(p))
            .sum::<f64>()
    }

    /// Entropy of each single variable of the scope, in scope order.
    pub fn singleton_entropies(&self) -> Vec<f64> {
        let k = self.scope.len();
        let mut per_var: Vec<BTreeMap<u32, f64>> = alloc::vec![BTreeMap::new(); k];
        for (cell, &p) in &self.table {
            for (pos, &s) in cell.iter().enumerate() {
                *per_var[pos].entry(s).or_insert(0.0) += p;
            }
        }
        per_var
            .iter()
            .map(|m| -m.values().map(|&p| p * libm::log2(p)).sum::<f64>())
            .collect()
    }

    /// Information content (multiinformation) of the variables in `set`:
    /// the sum of their individual entropies minus their joint entropy.
    /// Sets with fewer than two variables have information content 0.
    pub fn information_content(&self, set: &VarSet) -> Result<f64> {
        self.check_in_scope(set)?;
        if set.len() < 2 {
            return Ok(0.0);
        }
        let m = self.marginalize(set)?;
        let singles: f64 = m.singleton_entropies().iter().sum();
        Ok(singles - m.entropy())
    }

    /// `KL(self || q)` in bits.
    ///
    /// Requires the same variables and scope, and every cell of `self` to be
    /// supported by `q`.
    pub fn kl_divergence(&self, q: &JointDistribution) -> Result<f64> {
        if self.scope != q.scope || self.specs != q.specs {
            return Err(Error::ScopeMismatch);
        }
        let mut sum = 0.0;
        for (cell, &p) in &self.table {
            let qp = match q.table.get(cell) {
                Some(&qp) => qp,
                None => {
                    return Err(Error::SupportViolation { cell: cell.clone() });
                }
            };
            sum += p * libm::log2(p / qp);
        }
        Ok(sum)
    }

    /// Tests `A ⊥ B | C` by checking `P(abc)·P(c) = P(ac)·P(bc)` within `tol`
    /// for every assignment of `A ∪ B ∪ C`. `C` may be empty.
    ///
    /// Only assignments where `P(ac)·P(bc) > 0` or `P(abc) > 0` can fail the
    /// check, so the Cartesian product is never materialized; the result is
    /// the same as testing every assignment.
    pub fn conditional_independence(
        &self,
        a: &VarSet,
        b: &VarSet,
        c: &VarSet,
        tol: f64,
    ) -> Result<bool> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptyABSet);
        }
        if !a.is_disjoint(b) || !a.is_disjoint(c) || !b.is_disjoint(c) {
            return Err(Error::OverlappingSets);
        }
        let ac = a.union(c);
        let bc = b.union(c);
        let abc = ac.union(b);
        self.check_in_scope(&abc)?;

        let p_abc = self.marginalize(&abc)?;
        let p_ac = self.marginalize(&ac)?;
        let p_bc = self.marginalize(&bc)?;

        let ac_groups = group_by(&p_ac, c);
        let bc_groups = group_by(&p_bc, c);

        // For each variable of A∪B∪C: take it from the A∪C cell or the B∪C cell.
        let sources: Vec<(bool, usize)> = abc
            .iter()
            .map(|i| match ac.position(i) {
                Some(pos) => (true, pos),
                None => (false, bc.position(i).unwrap()),
            })
            .collect();

        let mut key = alloc::vec![0u32; abc.len()];
        for (c_key, ac_cells) in &ac_groups {
            let Some(bc_cells) = bc_groups.get(c_key) else {
                continue;
            };
            let pc: f64 = ac_cells.iter().map(|&(_, p)| p).sum();
            for &(ac_cell, pac) in ac_cells {
                for &(bc_cell, pbc) in bc_cells {
                    for (slot, &(from_ac, pos)) in key.iter_mut().zip(&sources) {
                        *slot = if from_ac { ac_cell[pos] } else { bc_cell[pos] };
                    }
                    let pabc = p_abc.prob(&key);
                    if (pabc * pc - pac * pbc).abs() > tol {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Cells of `d` grouped by their states on `c`.
fn group_by<'a>(d: &'a JointDistribution, c: &VarSet) -> BTreeMap<Vec<u32>, Vec<(&'a [u32], f64)>> {
    let c_pos: Vec<usize> = c.iter().map(|i| d.scope.position(i).unwrap()).collect();
    let mut groups: BTreeMap<Vec<u32>, Vec<(&[u32], f64)>> = BTreeMap::new();
    for (cell, p) in d.cells() {
        let key = c_pos.iter().map(|&pos| cell[pos]).collect();
        groups.entry(key).or_default().push((cell, p));
    }
    groups
}

fn check_cell(specs: &[VariableSpec], scope: &VarSet, cell: &[u32]) -> Result<()> {
    if cell.len() != scope.len() {
        return Err(Error::ArityMismatch {
            cell: cell.to_vec(),
            expected: scope.len(),
            found: cell.len(),
        });
    }
    for (var, &state) in scope.iter().zip(cell) {
        let cardinality = specs[var].cardinality;
        if state >= cardinality {
            return Err(Error::OutOfRangeState {
                cell: cell.to_vec(),
                variable: var,
                state,
                cardinality,
            });
        }
    }
    Ok(())
}
