//! Exact sparse linear algebra over ℚ(i).
//!
//! Vectors are sparse maps from coordinate to nonzero scalar. Elimination is
//! incremental: each inserted vector is reduced against the pivots found so
//! far, pivoting on the smallest coordinate, so results depend only on the
//! insertion order and never on magnitudes.

use std::collections::BTreeMap;

use crate::graded::Scalar;

pub type SparseVec = BTreeMap<usize, Scalar>;

/// `v += c · w`, pruning cancellations.
pub fn axpy(v: &mut SparseVec, c: &Scalar, w: &SparseVec) {
    for (k, x) in w {
        let add = c * x;
        match v.entry(*k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !add.is_zero() {
                    e.insert(add);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &add;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

/// A sparse matrix stored by columns.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.keys().all(|&r| r < rows)));
        Self { rows, columns }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(BTreeMap::len).sum()
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::default();
        self.columns.iter().filter(|c| e.insert((*c).clone())).count()
    }

    /// Basis of the kernel, as coefficient vectors over the columns.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut e = TrackedEchelon::default();
        self.columns
            .iter()
            .enumerate()
            .filter_map(|(j, c)| e.insert(c.clone(), SparseVec::from([(j, Scalar::one())])))
            .collect()
    }

    /// The same matrix with only the rows satisfying `keep`.
    pub fn restrict_rows(&self, keep: impl Fn(usize) -> bool) -> SparseMatrix {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().filter(|(r, _)| keep(**r)).map(|(r, v)| (*r, v.clone())).collect())
            .collect();
        SparseMatrix { rows: self.rows, columns }
    }

    /// `M · x` for a coefficient vector over the columns.
    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in x {
            axpy(&mut out, c, &self.columns[*j]);
        }
        out
    }
}

/// Row-echelon basis of a growing subspace, keyed by pivot coordinate. Pivot
/// vectors are normalized to leading coefficient 1; a pivot row only has
/// entries at or after its pivot, so reduction is a single forward pass.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` modulo the current span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut from = 0;
        loop {
            let Some((&k, c)) = v.range(from..).find(|(k, _)| self.pivots.contains_key(k)) else {
                return v;
            };
            let c = -c;
            axpy(&mut v, &c, &self.pivots[&k]);
            from = k + 1;
        }
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&k, lead)) = v.iter().next() else { return false };
        let inv = lead.inv().expect("nonzero pivot");
        let v: SparseVec = v.iter().map(|(i, x)| (*i, x * &inv)).collect();
        self.pivots.insert(k, v);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }
}

/// Echelon form that also records, for each pivot, the combination of
/// inserted vectors producing it; dependent insertions yield kernel vectors.
#[derive(Clone, Debug, Default)]
struct TrackedEchelon {
    pivots: BTreeMap<usize, (SparseVec, SparseVec)>,
}

impl TrackedEchelon {
    fn insert(&mut self, mut v: SparseVec, mut tag: SparseVec) -> Option<SparseVec> {
        let mut from = 0;
        while let Some((&k, c)) = v.range(from..).find(|(k, _)| self.pivots.contains_key(k)) {
            let c = -c;
            let (pv, pt) = &self.pivots[&k];
            axpy(&mut v, &c, pv);
            axpy(&mut tag, &c, pt);
            from = k + 1;
        }
        let Some((&k, lead)) = v.iter().next() else { return Some(tag) };
        let inv = lead.inv().expect("nonzero pivot");
        let v: SparseVec = v.iter().map(|(i, x)| (*i, x * &inv)).collect();
        let tag: SparseVec = tag.iter().map(|(i, x)| (*i, x * &inv)).collect();
        self.pivots.insert(k, (v, tag));
        None
    }
}
