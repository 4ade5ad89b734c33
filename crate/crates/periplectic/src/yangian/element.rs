use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalars::{parse_scalar, Coefficient, Scalar};
use crate::superlinalg::parity;

/// The generator `T_ij^(r+1)`; `r` counts from zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenTriple {
    pub i: i32,
    pub j: i32,
    pub r: u32,
}

impl GenTriple {
    pub fn new(i: i32, j: i32, r: u32) -> Self {
        debug_assert!(i != 0 && j != 0);
        GenTriple { i, j, r }
    }

    /// `T_ij^(order)`; `order ≥ 1`.
    pub fn of_order(i: i32, j: i32, order: u32) -> Self {
        assert!(order >= 1, "generator orders start at 1");
        GenTriple::new(i, j, order - 1)
    }

    /// The superscript `r + 1`.
    pub fn order(&self) -> u32 {
        self.r + 1
    }

    pub fn parity(&self) -> usize {
        (parity(self.i) + parity(self.j)) % 2
    }

    /// Degree in the filtration where `T^(r+1)` has degree `r`.
    pub fn filtration_degree(&self) -> u32 {
        self.r
    }

    /// `0` for equal signs, `+1` for `i > 0 > j`, `-1` for `i < 0 < j`.
    pub fn e_degree(&self) -> i32 {
        match (self.i > 0, self.j > 0) {
            (true, false) => 1,
            (false, true) => -1,
            _ => 0,
        }
    }

    pub fn check_range(&self, n_half: usize) -> Result<()> {
        crate::superlinalg::check_index(self.i, n_half)?;
        crate::superlinalg::check_index(self.j, n_half)
    }
}

impl fmt::Display for GenTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T[{},{},{}]", self.i, self.j, self.order())
    }
}

pub type Word = Vec<GenTriple>;

pub fn word_parity(w: &[GenTriple]) -> usize {
    w.iter().map(GenTriple::parity).sum::<usize>() % 2
}

/// Sign of reversing a word of homogeneous factors: `Σ_{a<b} p_a p_b`.
pub fn reversal_sign(w: &[GenTriple]) -> usize {
    let odd = w.iter().filter(|g| g.parity() == 1).count();
    odd * odd.saturating_sub(1) / 2
}

pub fn show_word(w: &[GenTriple]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Element of the free superalgebra on the generators `T_ij^(r)`: a finite
/// combination of words with nonzero rational coefficients. The empty word
/// is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElement {
    terms: BTreeMap<Word, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn one() -> Self {
        AlgebraElement::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        AlgebraElement::monomial(Vec::new(), c)
    }

    pub fn generator(g: GenTriple) -> Self {
        AlgebraElement::monomial(vec![g], Scalar::one())
    }

    /// `T_ij^(order)`, with `T_ij^(0) = δ_ij`.
    pub fn t(i: i32, j: i32, order: u32) -> Self {
        if order == 0 {
            if i == j {
                AlgebraElement::one()
            } else {
                AlgebraElement::zero()
            }
        } else {
            AlgebraElement::generator(GenTriple::of_order(i, j, order))
        }
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut x = AlgebraElement::zero();
        x.add_term(w, &c);
        x
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut x = AlgebraElement::zero();
        for (w, c) in terms {
            x.add_term(w, &c);
        }
        x
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, o: &AlgebraElement, c: &Scalar) {
        for (w, x) in &o.terms {
            self.add_term(w.clone(), &(x * c));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &[GenTriple]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// The coefficient of the empty word.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&[])
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &Scalar::one());
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &-Scalar::one());
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Concatenation product.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = AlgebraElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, &(x * y));
            }
        }
        out
    }

    /// Common parity of all words, `Some(0)` for zero, `None` if mixed.
    pub fn parity(&self) -> Option<usize> {
        let mut p = None;
        for w in self.terms.keys() {
            let q = word_parity(w);
            match p {
                None => p = Some(q),
                Some(x) if x != q => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(0))
    }

    /// Even and odd components.
    pub fn homogeneous_parts(&self) -> [AlgebraElement; 2] {
        let mut parts = [AlgebraElement::zero(), AlgebraElement::zero()];
        for (w, c) in &self.terms {
            parts[word_parity(w)].terms.insert(w.clone(), c.clone());
        }
        parts
    }

    /// `[a, b] = ab - (-1)^{|a||b|} ba`, extended bilinearly over the
    /// homogeneous components.
    pub fn supercommutator(&self, o: &Self) -> Self {
        let mut out = AlgebraElement::zero();
        let (xs, ys) = (self.homogeneous_parts(), o.homogeneous_parts());
        for (p, x) in xs.iter().enumerate() {
            for (q, y) in ys.iter().enumerate() {
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                out.add_scaled(&x.mul(y), &Scalar::one());
                out.add_scaled(&y.mul(x), &crate::scalars::sign(p * q + 1));
            }
        }
        out
    }

    /// Largest generator order occurring, 0 for scalars.
    pub fn max_order(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|w| w.iter().map(GenTriple::order))
            .max()
            .unwrap_or(0)
    }

    /// Largest filtration degree `Σ (order - 1)` over the words, `None` for zero.
    pub fn filtration_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|w| w.iter().map(GenTriple::filtration_degree).sum())
            .max()
    }

    /// Words of filtration degree exactly `d`.
    pub fn filtration_component(&self, d: u32) -> Self {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.iter().map(GenTriple::filtration_degree).sum::<u32>() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// The component of top filtration degree.
    pub fn top_component(&self) -> Self {
        match self.filtration_degree() {
            Some(d) => self.filtration_component(d),
            None => AlgebraElement::zero(),
        }
    }

    /// Extends `f` on generators to an algebra homomorphism.
    pub fn map_hom(&self, f: &mut impl FnMut(GenTriple) -> AlgebraElement) -> Self {
        let mut out = AlgebraElement::zero();
        for (w, c) in &self.terms {
            let mut acc = AlgebraElement::scalar(c.clone());
            for g in w {
                acc = acc.mul(&f(*g));
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, &Scalar::one());
        }
        out
    }

    /// Extends a parity-preserving `f` to an antihomomorphism
    /// `β(XY) = β(Y)β(X)(-1)^{|X||Y|}`.
    pub fn map_antihom(&self, f: &mut impl FnMut(GenTriple) -> AlgebraElement) -> Self {
        let mut out = AlgebraElement::zero();
        for (w, c) in &self.terms {
            let mut acc = AlgebraElement::scalar(c * crate::scalars::sign(reversal_sign(w)));
            for g in w.iter().rev() {
                acc = acc.mul(&f(*g));
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, &Scalar::one());
        }
        out
    }

    /// Every generator lies in `1..=N` in absolute value.
    pub fn check_range(&self, n_half: usize) -> Result<()> {
        for w in self.terms.keys() {
            for g in w {
                g.check_range(n_half)?;
            }
        }
        Ok(())
    }
}

impl From<GenTriple> for AlgebraElement {
    fn from(g: GenTriple) -> Self {
        AlgebraElement::generator(g)
    }
}

impl Coefficient for AlgebraElement {
    fn zero_elem() -> Self {
        AlgebraElement::zero()
    }
    fn one_elem() -> Self {
        AlgebraElement::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
    /// Only nonzero scalars are invertible here.
    fn inverse(&self) -> Option<Self> {
        if self.len() == 1 && !self.constant_term().is_zero() {
            Some(AlgebraElement::scalar(self.constant_term().recip()))
        } else {
            None
        }
    }
}

/// Canonical text form: terms in word order joined by ` + ` / ` - `, each an
/// optional exact coefficient followed by space-separated `T[i,j,r]` tokens.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if w.is_empty() {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a} ")?;
            }
            write!(f, "{}", show_word(w))?;
        }
        Ok(())
    }
}

impl FromStr for AlgebraElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser { s, pos: 0 }.element()
    }
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &str {
        &self.s[self.pos..]
    }

    fn skip_ws(&mut self) {
        let t = self.rest();
        self.pos += t.len() - t.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn element(&mut self) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        self.skip_ws();
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            self.skip_ws();
            let (c, w) = self.term()?;
            out.add_term(w, &if negative { -c } else { c });
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Scalar, Word)> {
        let coeff = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.number()?;
            self.skip_ws();
            if self.eat('*') {
                self.skip_ws();
            }
            Some(c)
        } else {
            None
        };
        let mut w = Word::new();
        while self.peek() == Some('T') {
            w.push(self.token()?);
            self.skip_ws();
        }
        match coeff {
            None if w.is_empty() => self.err("expected a coefficient or a generator"),
            c => Ok((c.unwrap_or_else(Scalar::one), w)),
        }
    }

    fn number(&mut self) -> Result<Scalar> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let n = p.rest().chars().take_while(char::is_ascii_digit).count();
            p.pos += n;
            n
        };
        digits(self);
        if self.eat('/') && digits(self) == 0 {
            return self.err("expected denominator digits");
        }
        parse_scalar(&self.s[start..self.pos]).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: start + pos, msg },
            other => other,
        })
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        self.eat('-');
        let n = self.rest().chars().take_while(char::is_ascii_digit).count();
        if n == 0 || n > 9 {
            return self.err("expected an integer of at most nine digits");
        }
        self.pos += n;
        let v = self.s[start..self.pos].parse().expect("digits checked");
        self.skip_ws();
        Ok(v)
    }

    fn token(&mut self) -> Result<GenTriple> {
        if !(self.eat('T') && self.eat('[')) {
            return self.err("expected `T[`");
        }
        let i = self.int()?;
        if !self.eat(',') {
            return self.err("expected `,`");
        }
        let j = self.int()?;
        if !self.eat(',') {
            return self.err("expected `,`");
        }
        let r = self.int()?;
        if !self.eat(']') {
            return self.err("expected `]`");
        }
        if i == 0 || j == 0 {
            return self.err("indices are nonzero");
        }
        if r < 1 {
            return self.err("generator orders start at 1");
        }
        Ok(GenTriple::of_order(i as i32, j as i32, r as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{frac, int};
    use proptest::prelude::*;

    fn g(i: i32, j: i32, order: u32) -> GenTriple {
        GenTriple::of_order(i, j, order)
    }

    #[test]
    fn parity_and_grading() {
        assert_eq!(g(1, -1, 1).parity(), 1);
        assert_eq!(g(-1, -2, 3).parity(), 0);
        assert_eq!(g(1, -1, 2).e_degree(), 1);
        assert_eq!(g(-2, 1, 2).e_degree(), -1);
        assert_eq!(g(-2, -1, 2).e_degree(), 0);
    }

    #[test]
    fn display_is_canonical() {
        let x = AlgebraElement::from_terms([
            (vec![g(1, 1, 2)], int(2)),
            (vec![g(1, 1, 1), g(1, 1, 1)], int(-1)),
            (vec![], frac(3, 2)),
        ]);
        assert_eq!(x.to_string(), "3/2 - T[1,1,1] T[1,1,1] + 2 T[1,1,2]");
        assert_eq!(x.to_string().parse::<AlgebraElement>().unwrap(), x);
        assert_eq!(AlgebraElement::zero().to_string(), "0");
        assert_eq!("0".parse::<AlgebraElement>().unwrap(), AlgebraElement::zero());
    }

    #[test]
    fn parser_accepts_loose_spacing_and_rejects_garbage() {
        let x: AlgebraElement = " -1/2*T[ -1 , 1 ,3]T[1,1,1]+T[1,1,1] - T[1,1,1]".parse().unwrap();
        assert_eq!(x.len(), 1);
        assert_eq!(x.coeff(&[g(-1, 1, 3), g(1, 1, 1)]), frac(-1, 2));
        for bad in ["", "T[1,1,0]", "T[0,1,1]", "T[1,1]", "2 +", "1/0", "x", "T[1,1,1]]"] {
            assert!(bad.parse::<AlgebraElement>().is_err(), "{bad}");
        }
    }

    #[test]
    fn odd_generators_anticommute_under_the_bracket() {
        let a = AlgebraElement::generator(g(1, -1, 1));
        let b = AlgebraElement::generator(g(-1, 1, 1));
        let c = a.supercommutator(&b);
        // [a, b] = ab + ba for odd a, b
        assert_eq!(c, a.mul(&b).add(&b.mul(&a)));
        let e = AlgebraElement::generator(g(1, 1, 1));
        assert_eq!(e.supercommutator(&a), e.mul(&a).sub(&a.mul(&e)));
    }

    #[test]
    fn antihomomorphism_signs() {
        let a = g(1, -1, 1);
        let b = g(-1, 1, 2);
        let x = AlgebraElement::monomial(vec![a, b], int(1));
        let id = x.map_antihom(&mut AlgebraElement::generator);
        // two odd factors swap with a sign
        assert_eq!(id, AlgebraElement::monomial(vec![b, a], int(-1)));
    }

    fn arb_gen() -> impl Strategy<Value = GenTriple> {
        (
            prop::sample::select(vec![1, 2, -1, -2]),
            prop::sample::select(vec![1, 2, -1, -2]),
            1u32..5,
        )
            .prop_map(|(i, j, r)| g(i, j, r))
    }

    fn arb_element() -> impl Strategy<Value = AlgebraElement> {
        prop::collection::vec((prop::collection::vec(arb_gen(), 0..4), -5i64..6, 1i64..4), 0..5)
            .prop_map(|ts| AlgebraElement::from_terms(ts.into_iter().map(|(w, p, q)| (w, frac(p, q)))))
    }

    proptest! {
        #[test]
        fn text_round_trip(x in arb_element()) {
            prop_assert_eq!(x.to_string().parse::<AlgebraElement>().unwrap(), x);
        }

        #[test]
        fn multiplication_is_associative(x in arb_element(), y in arb_element(), z in arb_element()) {
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        }

        #[test]
        fn bracket_is_super_antisymmetric(x in arb_element(), y in arb_element()) {
            // [x, y] = -(-1)^{|x||y|}[y, x] componentwise
            let lhs = x.supercommutator(&y);
            let mut rhs = AlgebraElement::zero();
            let (xs, ys) = (x.homogeneous_parts(), y.homogeneous_parts());
            for (p, a) in xs.iter().enumerate() {
                for (q, b) in ys.iter().enumerate() {
                    rhs.add_scaled(&b.supercommutator(a), &crate::scalars::sign(p * q + 1));
                }
            }
            prop_assert_eq!(lhs, rhs);
        }
    }
}
