use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Scalar;

/// The four commuting indeterminates. Graded-lex order uses `u > v > w > t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    U,
    V,
    W,
    T,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::U, Var::V, Var::W, Var::T];

    fn idx(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["u", "v", "w", "t"][self.idx()]
    }
}

// Packed monomial: total degree in bits 48..64, then one 12-bit exponent per
// variable with `u` most significant. Integer order on the packing is grlex.
type Mono = u64;

const EXP_BITS: u32 = 12;
const EXP_MASK: u64 = (1 << EXP_BITS) - 1;
const DEG_SHIFT: u32 = 48;

fn exp_shift(i: usize) -> u32 {
    EXP_BITS * (3 - i as u32)
}

fn mono_exp(m: Mono, i: usize) -> u32 {
    ((m >> exp_shift(i)) & EXP_MASK) as u32
}

fn mono_var_pow(i: usize, e: u32) -> Mono {
    ((e as u64) << DEG_SHIFT) | ((e as u64) << exp_shift(i))
}

fn mono_divides(a: Mono, b: Mono) -> bool {
    (0..4).all(|i| mono_exp(a, i) <= mono_exp(b, i))
}

/// Sparse multivariate polynomial over the rationals. Terms are kept sorted by
/// decreasing grlex monomial with no zero coefficients, so structural
/// equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, Scalar)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(0, c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Poly {
            terms: vec![(mono_var_pow(v.idx(), 1), Scalar::one())],
        }
    }

    /// `a·x + b` for a variable `x`.
    pub fn linear(x: Var, a: Scalar, b: Scalar) -> Self {
        &Poly::var(x).scale(&a) + &Poly::constant(b)
    }

    fn from_unsorted(mut raw: Vec<(Mono, Scalar)>) -> Self {
        raw.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut terms: Vec<(Mono, Scalar)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == 0)
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(0, c)] if c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading coefficient under grlex; zero for the zero polynomial.
    pub fn lc(&self) -> Scalar {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| (t.0 >> DEG_SHIFT) as u32).unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| mono_exp(t.0, v.idx())).max().unwrap_or(0)
    }

    /// Bit `i` is set when variable `i` occurs.
    fn mask(&self) -> u8 {
        let mut m = 0u8;
        for (mono, _) in &self.terms {
            for i in 0..4 {
                if mono_exp(*mono, i) > 0 {
                    m |= 1 << i;
                }
            }
        }
        m
    }

    pub fn variables(&self) -> Vec<Var> {
        let m = self.mask();
        Var::ALL.into_iter().filter(|v| m & (1 << v.idx()) != 0).collect()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Scaled so that the grlex-leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.terms.first()?;
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.terms.first() {
            if !mono_divides(*dm, *rm) {
                return None;
            }
            let q = Poly {
                terms: vec![(rm - dm, rc / dc)],
            };
            rem = &rem - &(&q * d);
            quot.push(q.terms[0].clone());
        }
        Some(Poly::from_unsorted(quot))
    }

    /// Coefficients with respect to `x`, indexed by degree in `x`.
    fn coeffs_in(&self, x: usize) -> Vec<Poly> {
        let deg = self.terms.iter().map(|t| mono_exp(t.0, x)).max();
        let Some(deg) = deg else { return Vec::new() };
        let mut raw: Vec<Vec<(Mono, Scalar)>> = vec![Vec::new(); deg as usize + 1];
        for (m, c) in &self.terms {
            let e = mono_exp(*m, x);
            raw[e as usize].push((m - mono_var_pow(x, e), c.clone()));
        }
        raw.into_iter().map(Poly::from_unsorted).collect()
    }

    fn from_coeffs_in(x: usize, coeffs: &[Poly]) -> Poly {
        let mut raw = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            let shift = mono_var_pow(x, e as u32);
            raw.extend(c.terms.iter().map(|(m, a)| (m + shift, a.clone())));
        }
        Poly::from_unsorted(raw)
    }

    /// Coefficients with respect to `x`, indexed by degree in `x`.
    pub fn coefficients_in(&self, x: Var) -> Vec<Poly> {
        self.coeffs_in(x.idx())
    }

    /// Replaces `x` by the polynomial `value`.
    pub fn substitute(&self, x: Var, value: &Poly) -> Poly {
        let coeffs = self.coeffs_in(x.idx());
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Evaluates at a point given for every variable that occurs.
    pub fn eval(&self, point: &[(Var, Scalar)]) -> Option<Scalar> {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..4 {
                let e = mono_exp(*m, i);
                if e > 0 {
                    let (_, val) = point.iter().find(|(v, _)| v.idx() == i)?;
                    t *= num_traits::pow(val.clone(), e as usize);
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// Dense coefficient list `[c0, c1, ...]` of a polynomial in `x` alone.
    pub fn univariate_coeffs(&self, x: Var) -> Option<Vec<Scalar>> {
        if self.mask() & !(1 << x.idx()) != 0 {
            return None;
        }
        Some(
            self.coeffs_in(x.idx())
                .iter()
                .map(|c| c.constant_value().expect("free of other variables"))
                .collect(),
        )
    }

    /// Greatest common divisor, normalised to grlex-leading coefficient 1.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        if a == b {
            return a.monic();
        }
        let (small, large) = if a.terms.len() <= b.terms.len() { (a, b) } else { (b, a) };
        if large.div_exact(small).is_some() {
            return small.monic();
        }
        let (ma, mb) = (a.mask(), b.mask());
        if ma & mb == 0 {
            return Poly::one();
        }
        for i in 0..4 {
            let bit = 1u8 << i;
            if ma & bit != 0 && mb & bit == 0 {
                return Poly::gcd(&content(&a.coeffs_in(i)), b);
            }
            if mb & bit != 0 && ma & bit == 0 {
                return Poly::gcd(a, &content(&b.coeffs_in(i)));
            }
        }
        // Same variable set: eliminate the variable of least degree.
        let x = (0..4)
            .filter(|i| ma & (1 << i) != 0)
            .min_by_key(|&i| {
                let v = Var::ALL[i];
                a.degree_in(v).max(b.degree_in(v))
            })
            .expect("non-constant");
        let ac = a.coeffs_in(x);
        let bc = b.coeffs_in(x);
        let ca = content(&ac);
        let cb = content(&bc);
        let c = Poly::gcd(&ca, &cb);
        let pa: Vec<Poly> = ac.iter().map(|p| divide(p, &ca)).collect();
        let pb: Vec<Poly> = bc.iter().map(|p| divide(p, &cb)).collect();
        let g = primitive_prs(pa, pb);
        (&c * &Poly::from_coeffs_in(x, &g)).monic()
    }
}

fn divide(p: &Poly, d: &Poly) -> Poly {
    p.div_exact(d).expect("exact division by a known divisor")
}

/// Gcd of a list of polynomials, monic.
fn content(coeffs: &[Poly]) -> Poly {
    let mut acc = Poly::zero();
    for c in coeffs {
        acc = Poly::gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn trim(r: &mut Vec<Poly>) {
    while r.last().is_some_and(Poly::is_zero) {
        r.pop();
    }
}

/// Pseudo-remainder of univariate representations (index = degree).
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        if !lb.is_one() {
            for c in r.iter_mut() {
                *c = &*c * lb;
            }
        }
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] = &r[k + shift] - &(&lr * bk);
        }
        trim(&mut r);
    }
    r
}

fn primitive_normalised(mut r: Vec<Poly>) -> Vec<Poly> {
    let c = content(&r);
    if !c.is_one() {
        r = r.iter().map(|p| divide(p, &c)).collect();
    }
    let lc = r.last().expect("nonzero").lc();
    if !lc.is_one() {
        let inv = lc.recip();
        r = r.iter().map(|p| p.scale(&inv)).collect();
    }
    r
}

/// Primitive polynomial remainder sequence; inputs primitive of positive degree.
fn primitive_prs(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let (mut f, mut g) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        let r = prem(&f, &g);
        if r.is_empty() {
            return g;
        }
        if r.len() == 1 {
            return vec![Poly::one()];
        }
        f = std::mem::replace(&mut g, primitive_normalised(r));
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut terms = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    terms.push((*ma, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    terms.push((*mb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        terms.push((*ma, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&o.terms[j..]);
        Poly { terms }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                raw.push((ma + mb, ca * cb));
            }
        }
        Poly::from_unsorted(raw)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for v in Var::ALL {
                match mono_exp(*m, v.idx()) {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{}^{}", v.name(), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
