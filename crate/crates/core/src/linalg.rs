//! Exact sparse Gaussian elimination over a coefficient field.

use std::collections::BTreeMap;

use crate::coeff::{Field, FieldValue};

/// Sparse vector: column index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, FieldValue>;

/// `acc += c * v`, dropping entries that cancel.
pub fn axpy(acc: &mut SparseVec, c: &FieldValue, v: &SparseVec) {
    for (k, x) in v {
        let add = c * x;
        match acc.get_mut(k) {
            Some(y) => {
                *y = &*y + &add;
                if y.is_zero() {
                    acc.remove(k);
                }
            }
            None => {
                if !add.is_zero() {
                    acc.insert(*k, add);
                }
            }
        }
    }
}

/// A subspace kept as a fully reduced row echelon basis: every row has
/// leading coefficient one and no other row has a nonzero entry in its pivot
/// column. Two subspaces are equal iff their bases are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    rows: BTreeMap<usize, SparseVec>,
}

impl Subspace {
    pub fn new(field: Field) -> Self {
        Subspace { field, rows: BTreeMap::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        let hits: Vec<usize> = v.keys().filter(|k| self.rows.contains_key(k)).copied().collect();
        for p in hits {
            if let Some(c) = out.get(&p).cloned() {
                axpy(&mut out, &c.neg(), &self.rows[&p]);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&pivot, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        let mut row = SparseVec::new();
        axpy(&mut row, &inv, &r);
        for other in self.rows.values_mut() {
            if let Some(c) = other.get(&pivot).cloned() {
                axpy(other, &c.neg(), &row);
            }
        }
        self.rows.insert(pivot, row);
        true
    }

    pub fn extend<'a>(&mut self, vs: impl IntoIterator<Item = &'a SparseVec>) {
        for v in vs {
            self.insert(v);
        }
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.values().all(|r| other.contains(r))
    }
}
