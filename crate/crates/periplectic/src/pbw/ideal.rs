use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use crate::reps::Subspace;
use crate::scalars::Scalar;
use crate::superlinalg::indices;
use crate::yangian::{rtt_defect, z_series, AlgebraElement, GenTriple, Word, ZForm};

/// The part of the two-sided ideal spanned by `w·ρ·w′` of weight at most
/// `W`, where `ρ` runs over the RTT defects and optionally the coefficients
/// of `Z(u) - 1`. The weight of `T_ij^(r)` is `r`.
///
/// This is plain linear algebra in the free algebra and shares nothing with
/// the rewriting rules. It only sees the part of the ideal reachable without
/// passing through higher weight, so membership is a proof that an element
/// vanishes, while non-membership proves nothing.
pub struct FilteredIdeal {
    n_half: usize,
    weight: u32,
    index: HashMap<Word, usize>,
    span: Subspace,
}

fn words_of_weight(n_half: usize, weight: u32) -> Vec<Vec<Word>> {
    let idx = indices(n_half);
    let mut by: Vec<Vec<Word>> = vec![vec![Vec::new()]];
    for w in 1..=weight {
        let mut out = Vec::new();
        for r in 1..=w {
            for &i in &idx {
                for &j in &idx {
                    for tail in &by[(w - r) as usize] {
                        let mut x = vec![GenTriple::of_order(i, j, r)];
                        x.extend_from_slice(tail);
                        out.push(x);
                    }
                }
            }
        }
        by.push(out);
    }
    by
}

fn weight_of(w: &[GenTriple]) -> u32 {
    w.iter().map(GenTriple::order).sum()
}

impl FilteredIdeal {
    /// The ideal of `X(p_N)` when `with_z` is false, of `Y(p_N)` otherwise.
    pub fn new(n_half: usize, weight: u32, with_z: bool) -> Self {
        let by = words_of_weight(n_half, weight);
        let index: HashMap<Word, usize> = by
            .iter()
            .rev()
            .flatten()
            .cloned()
            .enumerate()
            .map(|(k, w)| (w, k))
            .collect();
        let mut rels = Vec::new();
        let idx = indices(n_half);
        for &i in &idx {
            for &j in &idx {
                for &k in &idx {
                    for &l in &idx {
                        for a in 1..weight as usize {
                            for b in 1..=(weight as usize - a) {
                                rels.push(rtt_defect(n_half, i, j, k, l, a, b));
                            }
                        }
                    }
                }
            }
        }
        if with_z {
            for &anchor in &idx {
                for form in [ZForm::LeftAnchored, ZForm::RightAnchored] {
                    let z = z_series(n_half, weight as usize, anchor, form);
                    rels.extend((1..=weight as usize).map(|r| z.coeff(r).clone()));
                }
            }
        }
        let mut this = FilteredIdeal {
            n_half,
            weight,
            index,
            span: Subspace::new(0),
        };
        let mut span = Subspace::new(this.index.len());
        for rho in rels.iter().filter(|x| !x.is_zero()) {
            let top = rho.terms().map(|(w, _)| weight_of(w)).max().unwrap_or(0);
            for a in 0..=(weight - top) {
                for b in 0..=(weight - top - a) {
                    for left in &by[a as usize] {
                        for right in &by[b as usize] {
                            let l = AlgebraElement::monomial(left.clone(), Scalar::one());
                            let r = AlgebraElement::monomial(right.clone(), Scalar::one());
                            span.insert(this.vector(&l.mul(rho).mul(&r)));
                        }
                    }
                }
            }
        }
        this.span = span;
        this
    }

    fn vector(&self, x: &AlgebraElement) -> BTreeMap<usize, Scalar> {
        x.terms().map(|(w, c)| (self.index[w], c.clone())).collect()
    }

    pub fn n_half(&self) -> usize {
        self.n_half
    }

    /// False also when `x` has words above the weight bound.
    pub fn contains(&self, x: &AlgebraElement) -> bool {
        if x.terms().any(|(w, _)| weight_of(w) > self.weight) {
            return false;
        }
        self.span.contains(&self.vector(x))
    }

    /// An upper bound for the dimension of the filtered piece of weight
    /// `≤ d` of the quotient.
    pub fn quotient_dim_bound(&self, d: u32) -> usize {
        // words are indexed by decreasing weight and pivots are the smallest
        // coordinates, so the span meets the low-weight words exactly in the
        // rows whose pivot is a low-weight word
        let first_low = self.index.iter().filter(|(w, _)| weight_of(w) > d).count();
        let low_rows = self
            .span
            .basis()
            .filter(|v| v.keys().next().is_some_and(|&k| k >= first_low))
            .count();
        self.index.len() - first_low - low_rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::order::admissible_triples;
    use crate::scalars::int;

    fn b2() -> AlgebraElement {
        // B(u) = T_11(u)T_11(-u) at N = 1
        let x = AlgebraElement::t(1, 1, 1);
        AlgebraElement::t(1, 1, 2).scale(&int(2)).sub(&x.mul(&x))
    }

    fn z(n: usize) -> AlgebraElement {
        z_series(1, 4, 1, ZForm::LeftAnchored).coeff(n).clone()
    }

    /// Normal words of weight `≤ w`, counted directly.
    fn normal_words(n_half: usize, w: u32) -> usize {
        let letters = admissible_triples(n_half, w);
        fn walk(letters: &[GenTriple], from: usize, left: u32) -> usize {
            let mut total = 1;
            for (k, g) in letters.iter().enumerate().skip(from) {
                if g.order() <= left {
                    let next = if g.parity() == 0 { k } else { k + 1 };
                    total += walk(letters, next, left - g.order());
                }
            }
            total
        }
        walk(&letters, 0, w)
    }

    #[test]
    fn rtt_relations_alone_tie_b2_to_z() {
        let x = FilteredIdeal::new(1, 4, false);
        assert!(x.contains(&b2().sub(&z(2)).add(&z(3))));
        assert!(!x.contains(&b2()));
        assert!(x.contains(&z(1)));
    }

    #[test]
    fn b2_vanishes_once_z_is_one() {
        let y = FilteredIdeal::new(1, 4, true);
        assert!(y.contains(&b2()));
        assert!(!y.contains(&AlgebraElement::t(1, 1, 2)));
        assert_eq!(normal_words(1, 2), 7);
        assert!(y.quotient_dim_bound(2) < normal_words(1, 2));
    }

    #[test]
    fn low_weight_bounds_are_consistent_with_the_basis() {
        let y = FilteredIdeal::new(1, 2, true);
        assert_eq!(y.quotient_dim_bound(1), normal_words(1, 1));
        assert!(y.quotient_dim_bound(2) >= normal_words(1, 2));
    }
}
