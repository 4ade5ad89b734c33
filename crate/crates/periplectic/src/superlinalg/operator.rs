use std::collections::BTreeMap;

use rayon::prelude::*;

use super::space::{check_index, left_sign, parity, right_sign, Code, Space};
use super::vector::{Ring, SuperVector};
use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// Element of `(End C^{N|N})^{⊗n}`, stored as the matrix of its left action
/// on `(C^{N|N})^{⊗n}` so that products are plain matrix products.
///
/// Koszul signs enter only when converting between matrix entries and the
/// coefficients of pure tensors `E_{r1c1}⊗…⊗E_{rncn}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedOperator<F> {
    space: Space,
    /// column → (row → entry); no zero entries, no empty columns
    cols: BTreeMap<Code, BTreeMap<Code, F>>,
}

fn signed<F: Ring>(x: F, e: usize) -> F {
    if e % 2 == 0 {
        x
    } else {
        x.negated()
    }
}

impl<F: Ring> GradedOperator<F> {
    pub fn zero(space: Space) -> Self {
        GradedOperator {
            space,
            cols: BTreeMap::new(),
        }
    }

    pub fn scalar(space: Space, c: F) -> Self {
        let mut x = GradedOperator::zero(space);
        for k in space.basis() {
            x.add_entry(k, k, &c);
        }
        x
    }

    pub fn identity(space: Space) -> Self {
        GradedOperator::scalar(space, F::one_elem())
    }

    /// `Σ c · E_{r1c1}⊗…⊗E_{rncn}`, each term given as `(rows, cols, c)`.
    pub fn from_tensor_terms(space: Space, terms: impl IntoIterator<Item = (Vec<i32>, Vec<i32>, F)>) -> Result<Self> {
        let mut x = GradedOperator::zero(space);
        for (r, c, v) in terms {
            let rc = space.checked_encode(&r)?;
            let cc = space.checked_encode(&c)?;
            x.add_entry(rc, cc, &signed(v, left_sign(&r, &c)));
        }
        Ok(x)
    }

    /// `E_{ij}` with `E_{ij} e_k = δ_{jk} e_i`.
    pub fn matrix_unit(i: i32, j: i32, n_half: usize) -> Result<Self> {
        check_index(i, n_half)?;
        check_index(j, n_half)?;
        GradedOperator::from_tensor_terms(Space::new(n_half, 1), [(vec![i], vec![j], F::one_elem())])
    }

    fn add_entry(&mut self, row: Code, col: Code, x: &F) {
        if x.is_zero_elem() {
            return;
        }
        let column = self.cols.entry(col).or_default();
        match column.get_mut(&row) {
            Some(y) => {
                let s = y.plus(x);
                if s.is_zero_elem() {
                    column.remove(&row);
                    if column.is_empty() {
                        self.cols.remove(&col);
                    }
                } else {
                    *y = s;
                }
            }
            None => {
                column.insert(row, x.clone());
            }
        }
    }

    fn from_columns(space: Space, cols: impl IntoIterator<Item = (Code, SuperVector<F>)>) -> Self {
        let mut x = GradedOperator::zero(space);
        for (c, v) in cols {
            if !v.is_zero() {
                x.cols.insert(c, v.entries().map(|(r, e)| (r, e.clone())).collect());
            }
        }
        x
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn n_half(&self) -> usize {
        self.space.n_half
    }

    pub fn arity(&self) -> usize {
        self.space.arity
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.cols.values().map(BTreeMap::len).sum()
    }

    /// Matrix entries `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (Code, Code, &F)> {
        self.cols
            .iter()
            .flat_map(|(&c, col)| col.iter().map(move |(&r, x)| (r, c, x)))
    }

    pub fn entry_code(&self, row: Code, col: Code) -> F {
        self.cols
            .get(&col)
            .and_then(|c| c.get(&row))
            .cloned()
            .unwrap_or_else(F::zero_elem)
    }

    /// Matrix entry `⟨e_rows| X |e_cols⟩`.
    pub fn entry(&self, rows: &[i32], cols: &[i32]) -> Result<F> {
        Ok(self.entry_code(self.space.checked_encode(rows)?, self.space.checked_encode(cols)?))
    }

    /// Coefficient of `E_{r1c1}⊗…⊗E_{rncn}`.
    pub fn tensor_coefficient(&self, rows: &[i32], cols: &[i32]) -> Result<F> {
        Ok(signed(self.entry(rows, cols)?, left_sign(rows, cols)))
    }

    /// Expansion in pure tensors of matrix units.
    pub fn tensor_terms(&self) -> Vec<(Vec<i32>, Vec<i32>, F)> {
        self.entries()
            .map(|(r, c, x)| {
                let (r, c) = (self.space.decode(r), self.space.decode(c));
                let e = left_sign(&r, &c);
                (r, c, signed(x.clone(), e))
            })
            .collect()
    }

    pub fn column(&self, col: Code) -> SuperVector<F> {
        match self.cols.get(&col) {
            Some(c) => SuperVector::from_terms(self.space, c.iter().map(|(&r, x)| (r, x.clone()))),
            None => SuperVector::zero(self.space),
        }
    }

    /// Common parity of the nonzero entries; `Some(0)` for zero.
    pub fn degree(&self) -> Option<usize> {
        let mut deg = None;
        for (r, c, _) in self.entries() {
            let p = (self.space.parity_of(r) + self.space.parity_of(c)) % 2;
            match deg {
                None => deg = Some(p),
                Some(d) if d != p => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    fn check(&self, space: Space) -> Result<()> {
        if self.space.n_half != space.n_half {
            return Err(Error::DimensionMismatch(self.space.n_half, space.n_half));
        }
        if self.space.arity != space.arity {
            return Err(Error::ArityMismatch(self.space.arity, space.arity));
        }
        Ok(())
    }

    /// Left action `X x`.
    pub fn apply(&self, x: &SuperVector<F>) -> Result<SuperVector<F>> {
        self.check(x.space())?;
        let mut out = SuperVector::zero(self.space);
        for (c, xc) in x.entries() {
            if let Some(col) = self.cols.get(&c) {
                for (&r, m) in col {
                    out.add_term(r, &m.times(xc));
                }
            }
        }
        Ok(out)
    }

    /// Right action `x X`, built from `e_k E_{ij} = δ_{ik} e_j` with the
    /// mirror-image Koszul rule; `x (XY) = (x X) Y`.
    pub fn apply_right(&self, x: &SuperVector<F>) -> Result<SuperVector<F>> {
        self.check(x.space())?;
        let mut out = SuperVector::zero(self.space);
        for (r, c, m) in self.entries() {
            let xr = x.coeff(r);
            if xr.is_zero_elem() {
                continue;
            }
            let (ri, ci) = (self.space.decode(r), self.space.decode(c));
            let e = left_sign(&ri, &ci) + right_sign(&ri, &ci);
            out.add_term(c, &signed(xr.times(m), e));
        }
        Ok(out)
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Result<Self> {
        self.check(o.space)?;
        let cols: Vec<(Code, SuperVector<F>)> = o
            .cols
            .par_iter()
            .map(|(&c, col)| {
                let v = SuperVector::from_terms(o.space, col.iter().map(|(&r, x)| (r, x.clone())));
                (c, self.apply(&v).expect("spaces checked"))
            })
            .collect();
        Ok(GradedOperator::from_columns(self.space, cols))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o.space)?;
        let mut out = self.clone();
        for (r, c, x) in o.entries() {
            out.add_entry(r, c, x);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(F::negated)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map_coeffs(|x| x.scaled(c))
    }

    pub fn scale_by(&self, c: &F) -> Self {
        self.map_coeffs(|x| c.times(x))
    }

    pub fn map_coeffs<G: Ring>(&self, f: impl Fn(&F) -> G) -> GradedOperator<G> {
        let mut out = GradedOperator::zero(self.space);
        for (r, c, x) in self.entries() {
            out.add_entry(r, c, &f(x));
        }
        out
    }

    pub fn try_map_coeffs<G: Ring>(&self, f: impl Fn(&F) -> Result<G>) -> Result<GradedOperator<G>> {
        let mut out = GradedOperator::zero(self.space);
        for (r, c, x) in self.entries() {
            out.add_entry(r, c, &f(x)?);
        }
        Ok(out)
    }

    /// First entry where `self` and `o` differ, as `(row, col, self, o)`.
    pub fn first_difference(&self, o: &Self) -> Result<Option<(Vec<i32>, Vec<i32>, F, F)>> {
        let d = self.sub(o)?;
        let first = d.entries().next().map(|(r, c, _)| (r, c));
        Ok(first.map(|(r, c)| {
            (
                self.space.decode(r),
                self.space.decode(c),
                self.entry_code(r, c),
                o.entry_code(r, c),
            )
        }))
    }

    /// `X_{p_1…p_m} = ι_{p_1}(X⁽¹⁾)…ι_{p_m}(X⁽ᵐ⁾)` in arity `n`; slots are 1-based.
    pub fn embed(&self, slots: &[usize], n: usize) -> Result<Self> {
        let m = self.space.arity;
        if slots.len() != m {
            return Err(Error::ArityMismatch(slots.len(), m));
        }
        for (k, &p) in slots.iter().enumerate() {
            if p == 0 || p > n || slots[..k].contains(&p) {
                return Err(Error::BadSlot(p, n));
            }
        }
        let target = Space::new(self.space.n_half, n);
        let free: Vec<usize> = (1..=n).filter(|p| !slots.contains(p)).collect();
        let rest = Space::new(self.space.n_half, free.len());
        let mut out = GradedOperator::zero(target);
        for (rows, cols, t) in self.tensor_terms() {
            for fill in rest.basis() {
                let fill = rest.decode(fill);
                let mut a = vec![0i32; n];
                for (k, &p) in free.iter().enumerate() {
                    a[p - 1] = fill[k];
                }
                for (k, &p) in slots.iter().enumerate() {
                    a[p - 1] = cols[k];
                }
                let col = target.encode(&a);
                // ι_{p_m} acts first; each factor passes the slots before it
                let mut e = 0;
                for k in (0..m).rev() {
                    let p = slots[k] - 1;
                    let before: usize = a[..p].iter().map(|&i| parity(i)).sum();
                    e += (parity(rows[k]) + parity(cols[k])) * before;
                    a[p] = rows[k];
                }
                out.add_entry(target.encode(&a), col, &signed(t.clone(), e));
            }
        }
        Ok(out)
    }

    /// Graded tensor product `X ⊗ Y` acting on `(C^{N|N})^{⊗(n_X+n_Y)}`.
    pub fn tensor(&self, o: &Self) -> Result<Self> {
        if self.space.n_half != o.space.n_half {
            return Err(Error::DimensionMismatch(self.space.n_half, o.space.n_half));
        }
        let space = Space::new(self.space.n_half, self.space.arity + o.space.arity);
        let shift = o.space.dim() as Code;
        let mut out = GradedOperator::zero(space);
        for (r1, c1, x) in self.entries() {
            let pc1 = self.space.parity_of(c1);
            for (r2, c2, y) in o.entries() {
                let e = pc1 * (o.space.parity_of(r2) + o.space.parity_of(c2));
                out.add_entry(r1 * shift + r2, c1 * shift + c2, &signed(x.times(y), e));
            }
        }
        Ok(out)
    }

    /// Applies a map of matrix units `E_{rc} ↦ ±E_{r'c'}` in one slot (1-based),
    /// entrywise on pure-tensor coefficients.
    pub fn map_slot(&self, slot: usize, f: impl Fn(i32, i32) -> (i32, i32, usize)) -> Result<Self> {
        if slot == 0 || slot > self.space.arity {
            return Err(Error::BadSlot(slot, self.space.arity));
        }
        let mut out = GradedOperator::zero(self.space);
        for (mut r, mut c, t) in self.tensor_terms() {
            let (r2, c2, e) = f(r[slot - 1], c[slot - 1]);
            r[slot - 1] = r2;
            c[slot - 1] = c2;
            let e = e + left_sign(&r, &c);
            out.add_entry(self.space.encode(&r), self.space.encode(&c), &signed(t, e));
        }
        Ok(out)
    }

    /// `τ: E_{ij} ↦ E_{ji} (-1)^{īj̄+ī}` in one slot.
    pub fn tau_slot(&self, slot: usize) -> Result<Self> {
        self.map_slot(slot, |i, j| (j, i, parity(i) * parity(j) + parity(i)))
    }

    /// `π: E_{ij} ↦ E_{-i,-j}` in one slot.
    pub fn pi_slot(&self, slot: usize) -> Result<Self> {
        self.map_slot(slot, |i, j| (-i, -j, 0))
    }

    /// `τπ: E_{ij} ↦ E_{-j,-i} (-1)^{īj̄+j̄}` in one slot.
    pub fn tau_pi_slot(&self, slot: usize) -> Result<Self> {
        self.map_slot(slot, |i, j| (-j, -i, parity(i) * parity(j) + parity(j)))
    }

    /// Parity automorphism `E_{ij} ↦ E_{ij}(-1)^{ī+j̄}` in one slot.
    pub fn parity_slot(&self, slot: usize) -> Result<Self> {
        self.map_slot(slot, |i, j| (i, j, parity(i) + parity(j)))
    }

    /// Renames indices `±a ↦ ±σ(a)` in every slot, where `perm[a-1] = σ(a)`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.space.n_half;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::DimensionMismatch(perm.len(), n));
        }
        for &p in perm {
            if p == 0 || p > n || seen[p - 1] {
                return Err(Error::IndexOutOfRange(p as i64, n));
            }
            seen[p - 1] = true;
        }
        let sigma = |i: i32| i.signum() * perm[i.unsigned_abs() as usize - 1] as i32;
        let mut out = GradedOperator::zero(self.space);
        for (r, c, x) in self.entries() {
            let r: Vec<i32> = self.space.decode(r).into_iter().map(sigma).collect();
            let c: Vec<i32> = self.space.decode(c).into_iter().map(sigma).collect();
            out.add_entry(self.space.encode(&r), self.space.encode(&c), x);
        }
        Ok(out)
    }
}

/// Applies `X_1 X_2 … X_k` to `x` from the left (rightmost factor first).
pub fn apply_product<F: Ring>(factors: &[&GradedOperator<F>], x: &SuperVector<F>) -> Result<SuperVector<F>> {
    let mut v = x.clone();
    for f in factors.iter().rev() {
        v = f.apply(&v)?;
    }
    Ok(v)
}

/// Applies `X_1 X_2 … X_k` to `x` from the right (leftmost factor first).
pub fn apply_product_right<F: Ring>(factors: &[&GradedOperator<F>], x: &SuperVector<F>) -> Result<SuperVector<F>> {
    let mut v = x.clone();
    for f in factors {
        v = f.apply_right(&v)?;
    }
    Ok(v)
}
