use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::element::{word_parity, AlgebraElement, GenTriple, Word};
use super::series::{inverse_t_matrix, SeriesMatrix};
use crate::error::{Error, Result};
use crate::scalars::{sign, Scalar, TruncatedSeries};
use crate::superlinalg::{indices, parity};

/// Element of the graded tensor square of the free algebra, with
/// `(a⊗b)(c⊗d) = (-1)^{|b||c|} ac⊗bd`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn one() -> Self {
        TensorElement::pure(&AlgebraElement::one(), &AlgebraElement::one())
    }

    /// `x ⊗ y`.
    pub fn pure(x: &AlgebraElement, y: &AlgebraElement) -> Self {
        let mut out = TensorElement::zero();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                out.add_term(a.clone(), b.clone(), &(c * d));
            }
        }
        out
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &o.terms {
            out.add_term(a.clone(), b.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = TensorElement::zero();
        for ((a, b), x) in &self.terms {
            out.add_term(a.clone(), b.clone(), &(x * c));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = TensorElement::zero();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &o.terms {
                let s = sign(word_parity(b) * word_parity(c));
                let mut ac = a.clone();
                ac.extend_from_slice(c);
                let mut bd = b.clone();
                bd.extend_from_slice(d);
                out.add_term(ac, bd, &(x * y * s));
            }
        }
        out
    }

    /// Applies linear maps on the two legs: `Σ c f(a) ⊗ g(b)`.
    pub fn map_legs(&self, mut f: impl FnMut(&AlgebraElement) -> Result<AlgebraElement>) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for ((a, b), c) in &self.terms {
            let fa = f(&AlgebraElement::monomial(a.clone(), Scalar::one()))?;
            let fb = f(&AlgebraElement::monomial(b.clone(), Scalar::one()))?;
            out = out.add(&TensorElement::pure(&fa, &fb).scale(c));
        }
        Ok(out)
    }
}

impl std::fmt::Display for TensorElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                format!(
                    "{c} ({}) ⊗ ({})",
                    super::element::show_word(a),
                    super::element::show_word(b)
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Δ(T_ij^(r)) = Σ_k Σ_{p+q=r} T_ik^(p) ⊗ T_kj^(q) (-1)^{(ī+k̄)(j̄+k̄)}`.
pub fn delta_generator(n_half: usize, g: GenTriple) -> TensorElement {
    let (i, j, r) = (g.i, g.j, g.order());
    let mut out = TensorElement::zero();
    for &k in &indices(n_half) {
        let s = sign((parity(i) + parity(k)) * (parity(j) + parity(k)));
        for p in 0..=r {
            let x = AlgebraElement::t(i, k, p);
            let y = AlgebraElement::t(k, j, r - p);
            out = out.add(&TensorElement::pure(&x, &y).scale(&s));
        }
    }
    out
}

/// The comultiplication, extended multiplicatively.
pub fn delta(n_half: usize, x: &AlgebraElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for (w, c) in x.terms() {
        let mut acc = TensorElement::one().scale(c);
        for g in w {
            acc = acc.mul(&delta_generator(n_half, *g));
        }
        out = out.add(&acc);
    }
    out
}

/// The counit: every generator maps to 0.
pub fn counit(x: &AlgebraElement) -> Scalar {
    x.constant_term()
}

/// The antipode `T_ij(u) ↦ T′_ij(u)`, an antiautomorphism. Needs the inverse
/// matrix through the largest order occurring in `x`.
pub struct Antipode {
    inverse: SeriesMatrix,
}

impl Antipode {
    pub fn new(n_half: usize, order: usize) -> Self {
        Antipode {
            inverse: inverse_t_matrix(n_half, order),
        }
    }

    pub fn generator(&self, g: GenTriple) -> Result<AlgebraElement> {
        let r = g.order() as usize;
        if r > self.inverse.order() {
            return Err(Error::TruncationOverflow {
                order: r,
                budget: self.inverse.order(),
            });
        }
        Ok(self.inverse.entry(g.i, g.j).coeff(r).clone())
    }

    pub fn apply(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        let max = x.max_order() as usize;
        if max > self.inverse.order() {
            return Err(Error::TruncationOverflow {
                order: max,
                budget: self.inverse.order(),
            });
        }
        Ok(x.map_antihom(&mut |g| self.generator(g).expect("order checked")))
    }
}

/// `T_ij(u) ↦ T_ij(-u)`, an antiautomorphism.
pub fn m_map(x: &AlgebraElement) -> AlgebraElement {
    x.map_antihom(&mut |g| AlgebraElement::generator(g).scale(&sign(g.order() as usize)))
}

/// `T_ij(u) ↦ T_{-j,-i}(u)(-1)^{īj̄+j̄}`, an automorphism.
pub fn t_map(x: &AlgebraElement) -> AlgebraElement {
    x.map_hom(&mut |g| {
        let s = sign(parity(g.i) * parity(g.j) + parity(g.j));
        AlgebraElement::generator(GenTriple::new(-g.j, -g.i, g.r)).scale(&s)
    })
}

/// `T_ij(u) ↦ c(u)T_ij(u)` for a scalar series `c` with leading term 1.
pub fn twist(x: &AlgebraElement, c: &TruncatedSeries<Scalar>) -> Result<AlgebraElement> {
    if !c.coeff(0).is_one() {
        return Err(Error::NotInvertible);
    }
    let max = x.max_order() as usize;
    if max > c.order() {
        return Err(Error::TruncationOverflow {
            order: max,
            budget: c.order(),
        });
    }
    Ok(x.map_hom(&mut |g| {
        let r = g.order();
        let mut out = AlgebraElement::zero();
        for p in 0..=r {
            out.add_scaled(&AlgebraElement::t(g.i, g.j, r - p), c.coeff(p as usize));
        }
        out
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{frac, int};
    use crate::yangian::series::{z_series, ZForm};

    fn gen(i: i32, j: i32, r: u32) -> AlgebraElement {
        AlgebraElement::t(i, j, r)
    }

    #[test]
    fn first_order_hopf_structure() {
        for &i in &indices(2) {
            for &j in &indices(2) {
                let x = gen(i, j, 1);
                let want = TensorElement::pure(&x, &AlgebraElement::one())
                    .add(&TensorElement::pure(&AlgebraElement::one(), &x));
                assert_eq!(delta(2, &x), want);
                assert!(counit(&x).is_zero());
                assert_eq!(Antipode::new(2, 1).apply(&x).unwrap(), x.neg());
            }
        }
    }

    #[test]
    fn delta_is_coassociative_on_generators() {
        // (Δ⊗id)Δ = (id⊗Δ)Δ, compared as sums over triples of words
        let n = 1;
        for &i in &indices(n) {
            for &j in &indices(n) {
                for r in 1..=3 {
                    let d = delta_generator(n, GenTriple::of_order(i, j, r));
                    let mut left: BTreeMap<(Word, Word, Word), Scalar> = BTreeMap::new();
                    let mut right: BTreeMap<(Word, Word, Word), Scalar> = BTreeMap::new();
                    for ((a, b), c) in d.terms() {
                        let da = delta(n, &AlgebraElement::monomial(a.clone(), int(1)));
                        for ((x, y), e) in da.terms() {
                            *left
                                .entry((x.clone(), y.clone(), b.clone()))
                                .or_insert_with(Scalar::zero) += c * e;
                        }
                        let db = delta(n, &AlgebraElement::monomial(b.clone(), int(1)));
                        for ((x, y), e) in db.terms() {
                            *right
                                .entry((a.clone(), x.clone(), y.clone()))
                                .or_insert_with(Scalar::zero) += c * e;
                        }
                    }
                    left.retain(|_, v| !v.is_zero());
                    right.retain(|_, v| !v.is_zero());
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn maps_are_involutive_where_expected() {
        let x = gen(1, -2, 2).mul(&gen(-1, -1, 1));
        assert_eq!(m_map(&m_map(&x)), x);
        assert_eq!(t_map(&t_map(&x)), x);
        assert_eq!(m_map(&t_map(&x)), t_map(&m_map(&x)));
    }

    #[test]
    fn twist_scales_z_by_the_even_square() {
        let c = TruncatedSeries::new(vec![int(1), int(2), frac(-1, 3), int(5)], 3);
        let cc = c.mul(&c.negate_variable());
        for n in 1..=2 {
            let z = z_series(n, 3, 1, ZForm::LeftAnchored);
            let twisted = z.map(|x| twist(x, &c).unwrap());
            let want = super::super::series::lift(&cc).mul(&z);
            assert_eq!(twisted, want);
        }
    }

    #[test]
    fn twist_needs_unit_leading_term() {
        let c = TruncatedSeries::new(vec![int(2)], 2);
        assert!(twist(&gen(1, 1, 1), &c).is_err());
    }
}
