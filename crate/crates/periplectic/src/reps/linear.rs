use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalars::Scalar;
use crate::superlinalg::{GradedOperator, SuperVector};

pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn dot(a: &SparseVec, b: &SparseVec) -> Scalar {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut acc = Scalar::zero();
    for (k, x) in small {
        if let Some(y) = large.get(k) {
            acc += x * y;
        }
    }
    acc
}

fn axpy(y: &mut SparseVec, c: &Scalar, x: &SparseVec) {
    for (k, v) in x {
        let d = c * v;
        let e = y.entry(*k).or_insert_with(Scalar::zero);
        *e += d;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

pub fn from_vector(v: &SuperVector<Scalar>) -> SparseVec {
    v.entries().map(|(k, x)| (k as usize, x.clone())).collect()
}

/// `φ ↦ φ∘X` for a row functional `φ` on the column space of `X`.
pub fn pull_back(phi: &SparseVec, x: &GradedOperator<Scalar>) -> SparseVec {
    let mut out = SparseVec::new();
    for (r, c, v) in x.entries() {
        if let Some(p) = phi.get(&(r as usize)) {
            let e = out.entry(c as usize).or_insert_with(Scalar::zero);
            *e += p * v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Rows of the matrix of `X`, each as a functional on the columns.
pub fn matrix_rows(x: &GradedOperator<Scalar>) -> Vec<SparseVec> {
    let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (r, c, v) in x.entries() {
        rows.entry(r as usize).or_default().insert(c as usize, v.clone());
    }
    rows.into_values().collect()
}

/// Columns of the matrix of `X`.
pub fn matrix_columns(x: &GradedOperator<Scalar>) -> Vec<SparseVec> {
    let mut cols: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (r, c, v) in x.entries() {
        cols.entry(c as usize).or_default().insert(r as usize, v.clone());
    }
    cols.into_values().collect()
}

/// A subspace of `Q^n` held in reduced row echelon form. Every basis row has
/// coefficient 1 at its pivot and 0 at every other pivot; pivots are the
/// smallest coordinates, so the form is unique.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    dim: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Subspace {
    pub fn new(dim: usize) -> Self {
        Subspace {
            dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn spanned_by(dim: usize, vecs: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut s = Subspace::new(dim);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// The remainder of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(k))
            .map(|(k, x)| (*k, x.clone()))
            .collect();
        for (p, c) in hits {
            axpy(&mut out, &-c, &self.rows[&p]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; false when it was already in the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(&v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        for x in r.values_mut() {
            *x *= &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &-c, &r);
            }
        }
        debug_assert!(r.get(&p).is_some_and(|x| x.is_one()));
        self.rows.insert(p, r);
        true
    }

    /// `{x : ⟨b, x⟩ = 0 for every basis row b}` under the plain dot product.
    pub fn annihilator(&self) -> Subspace {
        let mut out = Subspace::new(self.dim);
        for f in (0..self.dim).filter(|f| !self.rows.contains_key(f)) {
            let mut x = SparseVec::new();
            x.insert(f, Scalar::one());
            for (&p, row) in &self.rows {
                if let Some(c) = row.get(&f) {
                    x.insert(p, -c.clone());
                }
            }
            out.insert(x);
        }
        out
    }
}
