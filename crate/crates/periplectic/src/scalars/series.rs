use super::{binom, int, Coefficient, Scalar};
use crate::error::{Error, Result};

/// `c_0 + c_1 u⁻¹ + … + c_L u⁻ᴸ`; every operation discards orders above `L`.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    /// Pads with zeros or truncates to exactly `order + 1` coefficients.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero_elem());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        TruncatedSeries::constant(C::one_elem(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        TruncatedSeries::new(vec![c], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero_elem)
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncatedSeries::new(self.coeffs.clone(), order)
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn common_order(&self, o: &Self) -> usize {
        self.order().min(o.order())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.common_order(o);
        TruncatedSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k].plus(&o.coeffs[k])).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.common_order(o);
        TruncatedSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k].minus(&o.coeffs[k])).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(C::negated)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|x| x.scaled(c))
    }

    /// Multiplies every coefficient on the left by `c`.
    pub fn left_mul(&self, c: &C) -> Self {
        self.map(|x| c.times(x))
    }

    /// Cauchy product; factor order is preserved for noncommutative `C`.
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.common_order(o);
        let coeffs = (0..=n)
            .map(|k| {
                let mut acc = C::zero_elem();
                for p in 0..=k {
                    if self.coeffs[p].is_zero_elem() || o.coeffs[k - p].is_zero_elem() {
                        continue;
                    }
                    acc = acc.plus(&self.coeffs[p].times(&o.coeffs[k - p]));
                }
                acc
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Two-sided inverse through the same order; needs an invertible `c_0`
    /// that commutes with the other coefficients (a scalar in practice).
    pub fn invert(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].inverse().ok_or(Error::NotInvertible)?;
        let mut out: Vec<C> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for k in 1..self.coeffs.len() {
            let mut acc = C::zero_elem();
            for p in 1..=k {
                if self.coeffs[p].is_zero_elem() {
                    continue;
                }
                acc = acc.plus(&self.coeffs[p].times(&out[k - p]));
            }
            out.push(inv0.times(&acc).negated());
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// The series in `(-u)⁻¹`: coefficient `k` picks up `(-1)^k`.
    pub fn negate_variable(&self) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 0 { c.clone() } else { c.negated() })
                .collect(),
        }
    }

    /// Reads the coefficients as a series in `(u+c)⁻¹` and rewrites it in `u⁻¹`:
    /// the new `k`-th coefficient is `Σ_{m≤k} a_m binom(-m, k-m) c^{k-m}`.
    pub fn reexpand_shift(&self, c: &Scalar) -> Self {
        let n = self.order();
        let mut cpow = vec![int(1)];
        for k in 1..=n {
            let next = &cpow[k - 1] * c;
            cpow.push(next);
        }
        let coeffs = (0..=n)
            .map(|k| {
                if k == 0 {
                    return self.coeffs[0].clone();
                }
                let mut acc = C::zero_elem();
                for m in 1..=k {
                    if self.coeffs[m].is_zero_elem() {
                        continue;
                    }
                    let b = binom(-(m as i64), k - m) * &cpow[k - m];
                    acc = acc.plus(&self.coeffs[m].scaled(&b));
                }
                acc
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Substitutes `u ↦ -(u + c)`, the argument change used for `A(1-N-u)`.
    pub fn reflect_shift(&self, c: &Scalar) -> Self {
        self.negate_variable().reexpand_shift(c)
    }
}

impl TruncatedSeries<Scalar> {
    /// Equality through the shorter of the two orders.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let n = self.common_order(o);
        (0..=n).all(|k| self.coeffs[k] == o.coeffs[k])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{frac, int, Poly, RatFunc, Var};
    use proptest::prelude::*;

    fn s(v: &[i64], order: usize) -> TruncatedSeries<Scalar> {
        TruncatedSeries::new(v.iter().map(|&x| int(x)).collect(), order)
    }

    #[test]
    fn invert_geometric() {
        assert_eq!(s(&[1, 1], 2).invert().unwrap(), s(&[1, -1, 1], 2));
        assert_eq!(s(&[0, 1], 2).invert(), Err(Error::NotInvertible));
    }

    #[test]
    fn invert_unitarity_factor() {
        // 1 - 1/(u+t)^2 with t = 2, inverted: 1 + u^-2 - 2t u^-3
        let t = int(2);
        let u = RatFunc::var(Var::U);
        let f = &RatFunc::one() - &(&u + &RatFunc::constant(t.clone())).pow(2).inv().unwrap();
        let ser = TruncatedSeries::new(f.expand_at_infinity(Var::U, 3).unwrap(), 3);
        let inv = ser.invert().unwrap();
        assert_eq!(inv, s(&[1, 0, 1, -4], 3));
        assert!(ser.mul(&inv).agrees_with(&TruncatedSeries::one(3)));
    }

    #[test]
    fn reexpand_examples() {
        // (u+1)^-1 -> u^-1 - u^-2 + u^-3
        assert_eq!(s(&[0, 1], 3).reexpand_shift(&int(1)), s(&[0, 1, -1, 1], 3));
        // (u+c)^-2 -> u^-2 - 2c u^-3
        let c = frac(3, 2);
        let r = s(&[0, 0, 1], 3).reexpand_shift(&c);
        assert_eq!(r.coeffs()[2], int(1));
        assert_eq!(r.coeffs()[3], -int(2) * &c);
        let x = s(&[1, 2, 3, 4], 3);
        assert_eq!(x.reexpand_shift(&int(0)), x);
    }

    #[test]
    fn reexpand_matches_rational_function_expansion() {
        // (u+c)^-2 expanded directly
        let c = frac(-1, 3);
        let u = RatFunc::var(Var::U);
        let f = (&u + &RatFunc::constant(c.clone())).pow(2).inv().unwrap();
        let direct = f.expand_at_infinity(Var::U, 6).unwrap();
        let shifted = s(&[0, 0, 1], 6).reexpand_shift(&c);
        assert_eq!(shifted.coeffs(), direct.as_slice());
        let _ = Poly::zero();
    }

    fn arb_series() -> impl Strategy<Value = TruncatedSeries<Scalar>> {
        proptest::collection::vec((-9i64..9, 1i64..5), 6).prop_map(|v| {
            let mut c: Vec<Scalar> = v.into_iter().map(|(p, q)| frac(p, q)).collect();
            c[0] = int(1);
            TruncatedSeries::new(c, 6)
        })
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided_and_involutive(x in arb_series()) {
            let inv = x.invert().unwrap();
            prop_assert!(x.mul(&inv).agrees_with(&TruncatedSeries::one(6)));
            prop_assert!(inv.mul(&x).agrees_with(&TruncatedSeries::one(6)));
            prop_assert_eq!(inv.invert().unwrap(), x);
        }

        #[test]
        fn reexpand_round_trip(x in arb_series(), p in -5i64..5, q in 1i64..4) {
            let c = frac(p, q);
            prop_assert_eq!(x.reexpand_shift(&c).reexpand_shift(&-c.clone()), x);
        }
    }
}
