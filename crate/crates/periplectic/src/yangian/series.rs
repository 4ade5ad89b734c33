use std::collections::BTreeMap;

use num_traits::One;

use super::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::scalars::{sign, Coefficient, Scalar, TruncatedSeries};
use crate::superlinalg::{indices, parity};

pub type GenSeries = TruncatedSeries<AlgebraElement>;

/// `T_ij(u) = δ_ij + Σ_{r=1}^{L} T_ij^(r) u⁻ʳ`.
pub fn t_series(i: i32, j: i32, order: usize) -> GenSeries {
    let coeffs = (0..=order as u32).map(|r| AlgebraElement::t(i, j, r)).collect();
    TruncatedSeries::new(coeffs, order)
}

/// A `2N × 2N` matrix of series whose `(i,j)` entry has parity `ī + j̄`,
/// i.e. an even element of `End C^{N|N} ⊗ A[[u⁻¹]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesMatrix {
    n_half: usize,
    order: usize,
    entries: BTreeMap<(i32, i32), GenSeries>,
}

impl SeriesMatrix {
    pub fn from_fn(n_half: usize, order: usize, mut f: impl FnMut(i32, i32) -> GenSeries) -> Self {
        let mut entries = BTreeMap::new();
        for &i in &indices(n_half) {
            for &j in &indices(n_half) {
                let s = f(i, j).truncate(order);
                if !s.is_zero() {
                    entries.insert((i, j), s);
                }
            }
        }
        SeriesMatrix { n_half, order, entries }
    }

    pub fn identity(n_half: usize, order: usize) -> Self {
        SeriesMatrix::from_fn(n_half, order, |i, j| {
            if i == j {
                GenSeries::one(order)
            } else {
                GenSeries::zero(order)
            }
        })
    }

    /// The generating matrix `T(u)`.
    pub fn t_matrix(n_half: usize, order: usize) -> Self {
        SeriesMatrix::from_fn(n_half, order, |i, j| t_series(i, j, order))
    }

    pub fn n_half(&self) -> usize {
        self.n_half
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, i: i32, j: i32) -> GenSeries {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| GenSeries::zero(self.order))
    }

    /// `(XY)_il = Σ_k X_ik Y_kl (-1)^{(ī+k̄)(k̄+l̄)}`.
    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        SeriesMatrix::from_fn(self.n_half, order, |i, l| {
            let mut acc = GenSeries::zero(order);
            for &k in &indices(self.n_half) {
                let (Some(x), Some(y)) = (self.entries.get(&(i, k)), o.entries.get(&(k, l))) else {
                    continue;
                };
                let s = (parity(i) + parity(k)) * (parity(k) + parity(l));
                acc = acc.add(&x.mul(y).scale(&sign(s)));
            }
            acc
        })
    }

    pub fn sub(&self, o: &Self) -> Self {
        SeriesMatrix::from_fn(self.n_half, self.order.min(o.order), |i, j| {
            self.entry(i, j).sub(&o.entry(i, j))
        })
    }

    /// Inverse by the geometric series `Σ (1 - X)^n`; needs constant term 1.
    pub fn inverse(&self) -> Result<Self> {
        let one = SeriesMatrix::identity(self.n_half, self.order);
        for &i in &indices(self.n_half) {
            for &j in &indices(self.n_half) {
                let c = self.entry(i, j).coeff(0).clone();
                let want = if i == j {
                    AlgebraElement::one()
                } else {
                    AlgebraElement::zero()
                };
                if c != want {
                    return Err(Error::NotInvertible);
                }
            }
        }
        let y = one.sub(self);
        let mut power = one.clone();
        let mut out = one;
        // (1 - X)^n starts at order n
        for _ in 1..=self.order {
            power = power.mul(&y);
            out = SeriesMatrix::from_fn(self.n_half, self.order, |i, j| out.entry(i, j).add(&power.entry(i, j)));
        }
        Ok(out)
    }

    /// `X̃_ij = X_{-j,-i}(-1)^{īj̄+j̄}`, the image under `τπ ⊗ id`.
    pub fn tilde(&self) -> Self {
        SeriesMatrix::from_fn(self.n_half, self.order, |i, j| {
            let s = parity(i) * parity(j) + parity(j);
            self.entry(-j, -i).scale(&sign(s))
        })
    }

    /// `u ↦ -u` in every entry.
    pub fn negate_variable(&self) -> Self {
        SeriesMatrix::from_fn(self.n_half, self.order, |i, j| self.entry(i, j).negate_variable())
    }

    pub fn is_identity(&self) -> bool {
        *self == SeriesMatrix::identity(self.n_half, self.order)
    }
}

/// `T(u)⁻¹` in the free algebra; its entries are the series `T′_ij(u)`.
pub fn inverse_t_matrix(n_half: usize, order: usize) -> SeriesMatrix {
    SeriesMatrix::t_matrix(n_half, order)
        .inverse()
        .expect("T(u) has constant term 1")
}

/// `S(u) = T̃(-u)⁻¹` in the free algebra; `S(u) = T(u)` holds in `Y(p_N)`.
pub fn s_matrix(n_half: usize, order: usize) -> SeriesMatrix {
    SeriesMatrix::t_matrix(n_half, order)
        .tilde()
        .negate_variable()
        .inverse()
        .expect("T̃(-u) has constant term 1")
}

/// The two explicit formulas for `Z(u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZForm {
    /// `Σ_k T_{-k,-i}(u) T_{ki}(-u) (-1)^{īk̄+ī}`
    LeftAnchored,
    /// `Σ_k T_{ik}(-u) T_{-i,-k}(u) (-1)^{īk̄+k̄}`
    RightAnchored,
}

/// `Z(u)` through order `L` for the anchor index `i`.
pub fn z_series(n_half: usize, order: usize, anchor: i32, form: ZForm) -> GenSeries {
    let i = anchor;
    let mut acc = GenSeries::zero(order);
    for &k in &indices(n_half) {
        let (term, s) = match form {
            ZForm::LeftAnchored => (
                t_series(-k, -i, order).mul(&t_series(k, i, order).negate_variable()),
                parity(i) * parity(k) + parity(i),
            ),
            ZForm::RightAnchored => (
                t_series(i, k, order).negate_variable().mul(&t_series(-i, -k, order)),
                parity(i) * parity(k) + parity(k),
            ),
        };
        acc = acc.add(&term.scale(&sign(s)));
    }
    acc
}

fn t(i: i32, j: i32, p: usize) -> AlgebraElement {
    AlgebraElement::t(i, j, p as u32)
}

/// The right-hand side of the RTT relation at `u^{-a} v^{-b}` (`a, b ≥ 1`),
/// with `1/(u∓v) = Σ_m (±1)^m u^{-1-m} v^m`: single generators of order
/// `a+b-1` and products of two generators of total order `a+b-1`.
pub fn rtt_rhs(n_half: usize, i: i32, j: i32, k: i32, l: i32, a: usize, b: usize) -> AlgebraElement {
    assert!(a >= 1 && b >= 1, "coefficient orders start at 1");
    let (pi, pk, pl) = (parity(i), parity(k), parity(l));
    let mut out = AlgebraElement::zero();
    let s1 = sign(pi * pk + pi * pl + pk * pl);
    for m in 0..a {
        let (p, q) = (a - 1 - m, b + m);
        out.add_scaled(&t(k, j, p).mul(&t(i, l, q)), &s1);
        out.add_scaled(&t(k, j, q).mul(&t(i, l, p)), &-s1.clone());
    }
    if -i == k {
        for &h in &indices(n_half) {
            let s = sign(parity(h) * pl + pi * pl + pi);
            for m in 0..a {
                let c = -(&s * sign(m));
                out.add_scaled(&t(h, j, a - 1 - m).mul(&t(-h, l, b + m)), &c);
            }
        }
    }
    if j == -l {
        for &h in &indices(n_half) {
            let s = sign(parity(h) * pk + pi * pk + pi * pl + parity(h));
            for m in 0..a {
                let c = &s * sign(m);
                out.add_scaled(&t(k, -h, b + m).mul(&t(i, h, a - 1 - m)), &c);
            }
        }
    }
    out
}

/// `[T_ij^(a), T_kl^(b)]` minus the right-hand side at `u^{-a} v^{-b}`;
/// its vanishing is a defining relation of the extended Yangian.
pub fn rtt_defect(n_half: usize, i: i32, j: i32, k: i32, l: i32, a: usize, b: usize) -> AlgebraElement {
    let lhs = t(i, j, a).supercommutator(&t(k, l, b));
    lhs.sub(&rtt_rhs(n_half, i, j, k, l, a, b))
}

/// All defects with `1 ≤ a, b ≤ max_order`, keyed by `(i, j, k, l, a, b)`.
pub fn all_defects(n_half: usize, max_order: usize) -> Vec<((i32, i32, i32, i32, usize, usize), AlgebraElement)> {
    let idx = indices(n_half);
    let mut out = Vec::new();
    for &i in &idx {
        for &j in &idx {
            for &k in &idx {
                for &l in &idx {
                    for a in 1..=max_order {
                        for b in 1..=max_order {
                            out.push(((i, j, k, l, a, b), rtt_defect(n_half, i, j, k, l, a, b)));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Coefficients of `c(u)` as a series with scalar entries, checked to start at 1.
pub fn check_unit_leading(c: &TruncatedSeries<Scalar>) -> Result<()> {
    if c.coeff(0).is_one() {
        Ok(())
    } else {
        Err(Error::NotInvertible)
    }
}

/// `c(u)c(-u)`.
pub fn even_square(c: &TruncatedSeries<Scalar>) -> TruncatedSeries<Scalar> {
    c.mul(&c.negate_variable())
}

/// Lifts a scalar series to algebra coefficients.
pub fn lift(c: &TruncatedSeries<Scalar>) -> GenSeries {
    c.map(|x| AlgebraElement::scalar(x.clone()))
}

impl SeriesMatrix {
    /// Applies `f` to every coefficient of every entry.
    pub fn map_coeffs(&self, f: impl Fn(&AlgebraElement) -> AlgebraElement) -> Self {
        SeriesMatrix::from_fn(self.n_half, self.order, |i, j| self.entry(i, j).map(&f))
    }

    /// The scalar-valued check `X = 1` through the order.
    pub fn first_nonidentity(&self) -> Option<(i32, i32, usize, AlgebraElement)> {
        let one = SeriesMatrix::identity(self.n_half, self.order);
        for &i in &indices(self.n_half) {
            for &j in &indices(self.n_half) {
                let (x, y) = (self.entry(i, j), one.entry(i, j));
                for k in 0..=self.order {
                    if x.coeff(k) != y.coeff(k) {
                        return Some((i, j, k, x.coeff(k).minus(y.coeff(k))));
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::yangian::GenTriple;

    fn gen(i: i32, j: i32, r: u32) -> AlgebraElement {
        AlgebraElement::t(i, j, r)
    }

    #[test]
    fn inverse_is_two_sided_in_the_free_algebra() {
        for n in 1..=2 {
            let t = SeriesMatrix::t_matrix(n, 3);
            let ti = inverse_t_matrix(n, 3);
            assert!(t.mul(&ti).is_identity());
            assert!(ti.mul(&t).is_identity());
        }
    }

    #[test]
    fn low_inverse_coefficients() {
        let ti = inverse_t_matrix(1, 2);
        for (i, j) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            assert_eq!(ti.entry(i, j).coeff(1), &gen(i, j, 1).neg());
        }
        // (1+X)⁻¹ = 1 - X + X² at order 2, entry (1, -1):
        // -T2 + T1_{11}T1_{1,-1} + T1_{1,-1}T1_{-1,-1}(-1)^{(0+1)(1+1)}
        let want = gen(1, -1, 2)
            .neg()
            .add(&gen(1, 1, 1).mul(&gen(1, -1, 1)))
            .add(&gen(1, -1, 1).mul(&gen(-1, -1, 1)));
        assert_eq!(ti.entry(1, -1).coeff(2), &want);
    }

    #[test]
    fn first_s_coefficient_has_no_correction() {
        let s = s_matrix(2, 1);
        for &i in &indices(2) {
            for &j in &indices(2) {
                let e = parity(i) * parity(j) + parity(j);
                assert_eq!(s.entry(i, j).coeff(1), &gen(-j, -i, 1).scale(&sign(e)));
            }
        }
    }

    #[test]
    fn z_series_at_n1() {
        // N = 1, anchor 1: T_{-1,-1}(u)T_{11}(-u) + T_{1,-1}(u)T_{-1,1}(-u)
        let z = z_series(1, 3, 1, ZForm::LeftAnchored);
        let by_hand = t_series(-1, -1, 3)
            .mul(&t_series(1, 1, 3).negate_variable())
            .add(&t_series(1, -1, 3).mul(&t_series(-1, 1, 3).negate_variable()));
        assert_eq!(z, by_hand);
        assert_eq!(z.coeff(0), &AlgebraElement::one());
        for n in 1..=2 {
            for &i in &indices(n) {
                for form in [ZForm::LeftAnchored, ZForm::RightAnchored] {
                    let z = z_series(n, 3, i, form);
                    assert_eq!(z.coeff(0), &AlgebraElement::one());
                    for k in 0..=3 {
                        assert_eq!(z.coeff(k).parity(), Some(0));
                    }
                }
            }
        }
    }

    #[test]
    fn first_order_defect_is_the_bracket_display() {
        let n = 2;
        let idx = indices(n);
        for &i in &idx {
            for &j in &idx {
                for &k in &idx {
                    for &l in &idx {
                        let (pi, pj, pk, pl) = (parity(i), parity(j), parity(k), parity(l));
                        let mut want = AlgebraElement::zero();
                        let s1 = sign(pi * pk + pi * pl + pk * pl);
                        if k == j {
                            want.add_scaled(&gen(i, l, 1), &s1);
                        }
                        if i == l {
                            want.add_scaled(&gen(k, j, 1), &-s1.clone());
                        }
                        if -i == k {
                            want.add_scaled(&gen(-j, l, 1), &-sign(pi * pl + pj * pl + pi));
                        }
                        if j == -l {
                            want.add_scaled(&gen(k, -i, 1), &sign(pi * pl + pi));
                        }
                        assert_eq!(rtt_rhs(n, i, j, k, l, 1, 1), want, "{i} {j} {k} {l}");
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_even_defects_are_commutator_combinations() {
        for &(i, j) in &[(1, 1), (-1, -1), (1, 2), (-2, -1)] {
            for a in 1..=3 {
                for b in 1..=3 {
                    let d = rtt_defect(2, i, j, i, j, a, b);
                    for (w, c) in d.terms() {
                        assert_eq!(w.len(), 2, "{d}");
                        let rev: Vec<GenTriple> = w.iter().rev().copied().collect();
                        assert_eq!(d.coeff(&rev), -c.clone());
                    }
                }
            }
        }
    }

    #[test]
    fn defect_degree_bookkeeping() {
        for ((_, _, _, _, a, b), d) in all_defects(1, 3) {
            let top = (a + b - 1) as u32;
            for (w, _) in d.terms() {
                let total: u32 = w.iter().map(GenTriple::order).sum();
                match w.len() {
                    1 => assert_eq!(total, top),
                    2 => assert!(total == top || total == (a + b) as u32),
                    _ => panic!("unexpected word length"),
                }
            }
        }
    }
}
