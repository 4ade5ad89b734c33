use std::collections::BTreeMap;

use super::space::{Code, Space};
use crate::error::{Error, Result};
use crate::scalars::{Coefficient, Scalar};

/// Coefficient types usable in operators; the extra bounds allow columns to
/// be processed in parallel.
pub trait Ring: Coefficient + Send + Sync {
    fn from_scalar(c: &Scalar) -> Self {
        Self::one_elem().scaled(c)
    }
}

impl<T: Coefficient + Send + Sync> Ring for T {}

/// Sparse element of `(C^{N|N})^{⊗n}`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperVector<F> {
    space: Space,
    entries: BTreeMap<Code, F>,
}

impl<F: Ring> SuperVector<F> {
    pub fn zero(space: Space) -> Self {
        SuperVector {
            space,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_code(space: Space, code: Code) -> Self {
        let mut v = SuperVector::zero(space);
        v.entries.insert(code, F::one_elem());
        v
    }

    /// The pure tensor `e_{i_1} ⊗ … ⊗ e_{i_n}`.
    pub fn basis(n_half: usize, idx: &[i32]) -> Result<Self> {
        let space = Space::new(n_half, idx.len());
        Ok(SuperVector::from_code(space, space.checked_encode(idx)?))
    }

    pub fn from_terms(space: Space, terms: impl IntoIterator<Item = (Code, F)>) -> Self {
        let mut v = SuperVector::zero(space);
        for (c, x) in terms {
            v.add_term(c, &x);
        }
        v
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn entries(&self) -> impl Iterator<Item = (Code, &F)> {
        self.entries.iter().map(|(&c, x)| (c, x))
    }

    pub fn coeff(&self, code: Code) -> F {
        self.entries.get(&code).cloned().unwrap_or_else(F::zero_elem)
    }

    pub fn get(&self, idx: &[i32]) -> Result<F> {
        Ok(self.coeff(self.space.checked_encode(idx)?))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add_term(&mut self, code: Code, x: &F) {
        if x.is_zero_elem() {
            return;
        }
        match self.entries.get_mut(&code) {
            Some(y) => {
                let s = y.plus(x);
                if s.is_zero_elem() {
                    self.entries.remove(&code);
                } else {
                    *y = s;
                }
            }
            None => {
                self.entries.insert(code, x.clone());
            }
        }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.space.n_half != o.space.n_half {
            return Err(Error::DimensionMismatch(self.space.n_half, o.space.n_half));
        }
        if self.space.arity != o.space.arity {
            return Err(Error::ArityMismatch(self.space.arity, o.space.arity));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (c, x) in o.entries() {
            out.add_term(c, x);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(F::negated)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.scale_by(&F::from_scalar(c))
    }

    pub fn scale_by(&self, c: &F) -> Self {
        SuperVector::from_terms(self.space, self.entries().map(|(k, x)| (k, c.times(x))))
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> SuperVector<G> {
        SuperVector::from_terms(self.space, self.entries().map(|(k, x)| (k, f(x))))
    }

    /// `x ⊗ y`; vectors carry no operator signs.
    pub fn tensor(&self, o: &Self) -> Result<Self> {
        if self.space.n_half != o.space.n_half {
            return Err(Error::DimensionMismatch(self.space.n_half, o.space.n_half));
        }
        let space = Space::new(self.space.n_half, self.space.arity + o.space.arity);
        let shift = o.space.dim() as Code;
        let mut out = SuperVector::zero(space);
        for (a, x) in self.entries() {
            for (b, y) in o.entries() {
                out.add_term(a * shift + b, &x.times(y));
            }
        }
        Ok(out)
    }

    /// First basis vector where `self` and `o` differ, with both coefficients.
    pub fn first_difference(&self, o: &Self) -> Result<Option<(Vec<i32>, F, F)>> {
        let d = self.sub(o)?;
        let first = d.entries().next().map(|(k, _)| k);
        Ok(first.map(|k| (self.space.decode(k), self.coeff(k), o.coeff(k))))
    }

    /// Common parity of all nonzero components, `Some(0)` for the zero vector.
    pub fn degree(&self) -> Option<usize> {
        let mut deg = None;
        for (c, _) in self.entries() {
            let p = self.space.parity_of(c);
            match deg {
                None => deg = Some(p),
                Some(d) if d != p => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// `y = c·x` for some coefficient `c` (either vector may be zero).
    pub fn is_proportional_to(&self, x: &Self) -> bool {
        let Some((k, xk)) = x.entries().next() else {
            return true;
        };
        let Some(inv) = xk.inverse() else {
            return false;
        };
        let c = self.coeff(k).times(&inv);
        self.sub(&x.scale_by(&c)).map(|d| d.is_zero()).unwrap_or(false)
    }
}

/// The symmetric form `⟨e_i, e_j⟩ = δ_{i,-j}` on `C^{N|N}`.
pub fn form<F: Ring>(x: &SuperVector<F>, y: &SuperVector<F>) -> Result<F> {
    if x.space.arity != 1 || y.space.arity != 1 {
        return Err(Error::ArityMismatch(x.space.arity.max(y.space.arity), 1));
    }
    x.check(y)?;
    let mut acc = F::zero_elem();
    for (c, a) in x.entries() {
        let i = x.space.index_of_digit(c);
        let b = y.coeff(x.space.digit(-i));
        acc = acc.plus(&a.times(&b));
    }
    Ok(acc)
}
