//! Exact coefficients: rationals, multivariate rational functions in
//! `u, v, w, t`, and power series in `u⁻¹` truncated at a fixed order.

mod poly;
mod ratfunc;
mod series;

pub use poly::{Poly, Var};
pub use ratfunc::RatFunc;
pub use series::TruncatedSeries;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// `(-1)^e` as a scalar.
pub fn sign(e: usize) -> Scalar {
    if e % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Parses `p`, `-p`, `p/q` or `-p/q` with decimal digits, rejecting a zero
/// denominator. Surrounding whitespace is ignored.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let offset = s.len() - s.trim_start().len();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let num_v = parse_int(num, offset)?;
    let den_v = match den {
        Some(d) => {
            if d.starts_with(['-', '+']) {
                return Err(Error::Parse {
                    pos: offset + num.len() + 1,
                    msg: "signed denominator".into(),
                });
            }
            parse_int(d, offset + num.len() + 1)?
        }
        None => BigInt::one(),
    };
    if den_v.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Scalar::new(num_v, den_v))
}

fn parse_int(s: &str, pos: usize) -> Result<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse {
            pos,
            msg: format!("expected integer, found {s:?}"),
        });
    }
    let v: BigInt = digits.parse().map_err(|_| Error::Parse {
        pos,
        msg: "bad integer".into(),
    })?;
    Ok(if s.starts_with('-') { -v } else { v })
}

/// Binomial coefficient `binom(n, k)` for integer `n` (possibly negative).
pub fn binom(n: i64, k: usize) -> Scalar {
    let mut acc = Scalar::one();
    for i in 0..k {
        acc = acc * int(n - i as i64) / int(i as i64 + 1);
    }
    acc
}

pub fn factorial(n: usize) -> Scalar {
    (1..=n as i64).fold(Scalar::one(), |acc, k| acc * int(k))
}

/// `true` when the rational is a (possibly negative) integer.
pub fn is_integer(x: &Scalar) -> bool {
    x.denom().is_one()
}

/// Ring structure needed by [`TruncatedSeries`]. Multiplication need not be
/// commutative. Scalars act centrally through [`Coefficient::scaled`].
pub trait Coefficient: Clone + PartialEq + std::fmt::Debug {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &Scalar) -> Self;
    /// Two-sided inverse when it exists.
    fn inverse(&self) -> Option<Self>;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
}

impl Coefficient for Scalar {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
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
        self * c
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}
