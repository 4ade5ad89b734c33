use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Coefficient, Poly, Scalar, Var};
use crate::error::{Error, Result};

/// Quotient of polynomials in lowest terms with grlex-monic denominator.
/// Canonical form makes structural equality coincide with equality of values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn int(n: i64) -> Self {
        RatFunc::constant(super::int(n))
    }

    pub fn var(v: Var) -> Self {
        RatFunc::from(Poly::var(v))
    }

    /// `a·x + b`.
    pub fn linear(x: Var, a: i64, b: i64) -> Self {
        RatFunc::from(Poly::linear(x, super::int(a), super::int(b)))
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RatFunc::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let lc = den.lc();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RatFunc::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &RatFunc) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Replaces `x` by `value`. Errors if the denominator vanishes identically.
    pub fn substitute(&self, x: Var, value: &RatFunc) -> Result<Self> {
        let d = self.num.degree_in(x).max(self.den.degree_in(x));
        let sub = |p: &Poly| homogeneous_substitute(p, x, value, d);
        RatFunc::new(sub(&self.num), sub(&self.den))
    }

    pub fn eval(&self, point: &[(Var, Scalar)]) -> Option<Scalar> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point)? / d)
    }

    /// Coefficients `c_0..=c_order` of the expansion `Σ c_k x^{-k}` at
    /// infinity. Needs a function of `x` alone that is bounded at infinity.
    pub fn expand_at_infinity(&self, x: Var, order: usize) -> Result<Vec<Scalar>> {
        let not = || Error::NotExpandable(self.to_string());
        let p = self.num.univariate_coeffs(x).ok_or_else(not)?;
        let q = self.den.univariate_coeffs(x).ok_or_else(not)?;
        let mut out = vec![Scalar::zero(); order + 1];
        if p.is_empty() {
            return Ok(out);
        }
        let (m, n) = (p.len() - 1, q.len() - 1);
        if m > n {
            return Err(not());
        }
        // In y = 1/x: f = y^{n-m} P(y)/Q(y) with reversed coefficient lists.
        let pr: Vec<Scalar> = p.iter().rev().cloned().collect();
        let qr: Vec<Scalar> = q.iter().rev().cloned().collect();
        let lead_inv = qr[0].recip();
        let mut s: Vec<Scalar> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = pr.get(k).cloned().unwrap_or_else(Scalar::zero);
            for j in 1..=k.min(n) {
                acc -= &qr[j] * &s[k - j];
            }
            s.push(acc * &lead_inv);
        }
        for k in (n - m)..=order {
            out[k] = s[k - (n - m)].clone();
        }
        Ok(out)
    }
}

fn homogeneous_substitute(p: &Poly, x: Var, value: &RatFunc, d: u32) -> Poly {
    // Σ c_e a^e b^{d-e}: the common factor b^d cancels between numerator and denominator.
    let (a, b) = (&value.num, &value.den);
    let x_free_parts = p.coefficients_in(x);
    let mut acc = Poly::zero();
    for (e, c) in x_free_parts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = &(&a.pow(e as u32) * &b.pow(d - e as u32)) * c;
        acc = &acc + &term;
    }
    acc
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }
}

impl From<Scalar> for RatFunc {
    fn from(c: Scalar) -> Self {
        RatFunc::constant(c)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = &self.num + &o.num;
            if self.den.is_one() {
                return RatFunc { num, den: Poly::one() };
            }
            return RatFunc::canonical(num, self.den.clone());
        }
        // Both operands are reduced, so with g = gcd(b, d) the only common
        // factor of the numerator and denominator can come from g.
        let g = Poly::gcd(&self.den, &o.den);
        if g.is_one() {
            let num = &(&self.num * &o.den) + &(&o.num * &self.den);
            if num.is_zero() {
                return RatFunc::zero();
            }
            return RatFunc {
                num,
                den: &self.den * &o.den,
            };
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = o.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&o.num * &b1);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g2 = Poly::gcd(&num, &g);
        let (num, g_rest) = if g2.is_one() {
            (num, g)
        } else {
            (
                num.div_exact(&g2).expect("gcd divides"),
                g.div_exact(&g2).expect("gcd divides"),
            )
        };
        RatFunc {
            num,
            den: &(&b1 * &d1) * &g_rest,
        }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        let g1 = Poly::gcd(&self.num, &o.den);
        let g2 = Poly::gcd(&o.num, &self.den);
        let q = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        RatFunc {
            num: &q(&self.num, &g1) * &q(&o.num, &g2),
            den: &q(&self.den, &g2) * &q(&o.den, &g1),
        }
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::checked_div`] otherwise.
    fn div(self, o: &RatFunc) -> RatFunc {
        self.checked_div(o).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                (&self).$m(&o)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl Coefficient for RatFunc {
    fn zero_elem() -> Self {
        RatFunc::zero()
    }
    fn one_elem() -> Self {
        RatFunc::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.num_terms() == 1 {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{frac, int};

    fn x(v: Var) -> RatFunc {
        RatFunc::var(v)
    }

    fn inv(r: RatFunc) -> RatFunc {
        r.inv().unwrap()
    }

    #[test]
    fn opposite_fractions_cancel() {
        let (u, v) = (x(Var::U), x(Var::V));
        let a = inv(&u - &v);
        let b = inv(&v - &u);
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn three_term_partial_fractions_vanish() {
        let (u, v, w) = (x(Var::U), x(Var::V), x(Var::W));
        let uv = &u - &v;
        let uw = &u - &w;
        let vw = &v - &w;
        let s = &(&inv(&uv * &uw) - &inv(&uv * &vw)) + &inv(&uw * &vw);
        assert!(s.is_zero());
    }

    #[test]
    fn unitarity_scalar_part() {
        // (1 - 1/(u-v))(1 + 1/(u-v)) = 1 - 1/(u-v)^2
        let (u, v) = (x(Var::U), x(Var::V));
        let a = inv(&u - &v);
        let lhs = &(&RatFunc::one() - &a) * &(&RatFunc::one() + &a);
        let rhs = &RatFunc::one() - &a.pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_form_normalises_denominator() {
        let u = x(Var::U);
        let r = RatFunc::new(Poly::constant(int(2)), Poly::linear(Var::U, int(4), int(2))).unwrap();
        assert_eq!(r, inv(&u + &RatFunc::constant(frac(1, 2))).scale(&frac(1, 2)));
        assert_eq!(r.denom().lc(), int(1));
    }

    #[test]
    fn zero_inverse_is_an_error() {
        assert_eq!(RatFunc::zero().inv(), Err(Error::ZeroDenominator));
        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn substitution_and_expansion() {
        let (u, v) = (x(Var::U), x(Var::V));
        let r = inv(&u + &v);
        let s = r.substitute(Var::V, &-&v).unwrap();
        assert_eq!(s, inv(&u - &v));
        // 1/(u+1) = u^-1 - u^-2 + u^-3
        let e = inv(&u + &RatFunc::one()).expand_at_infinity(Var::U, 3).unwrap();
        assert_eq!(e, vec![int(0), int(1), int(-1), int(1)]);
        // u/(u-1) = 1 + u^-1 + u^-2
        let e = (&u / &(&u - &RatFunc::one())).expand_at_infinity(Var::U, 2).unwrap();
        assert_eq!(e, vec![int(1), int(1), int(1)]);
        assert!(u.expand_at_infinity(Var::U, 2).is_err());
    }
}
