//! The quantum Berezinian `A(u)` of the `gl_N` corner, the series
//! `B(u) = A(u)A(1-N-u)`, and checks that its coefficients are central,
//! have the expected image in `gr′ Y(p_N)`, and are inverted by the antipode.
//!
//! Identities in `Y(p_N)` are compared through normal forms, so every check
//! here inherits the behaviour of [`crate::pbw::ReductionSystem`]. Where an
//! identity is an identity of `X(p_N)` it is also checked without the
//! rewriting rules through [`crate::pbw::FilteredIdeal`].

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::Result;
use crate::pbw::{FilteredIdeal, ReductionSystem};
use crate::report::{CheckReport, Recorder};
use crate::scalars::{int, sign, Scalar};
use crate::superlinalg::indices;
use crate::yangian::{t_series, z_series, AlgebraElement, Antipode, GenSeries, ZForm};

/// `A(u)` in both orderings and `B(u)`, exact through `u^{-order}`.
#[derive(Clone, Debug)]
pub struct BerezinianSeries {
    pub n_half: usize,
    pub order: usize,
    /// `Σ_σ sgn σ T_{1,σ(1)}(u) T_{2,σ(2)}(u+1) ⋯ T_{N,σ(N)}(u+N-1)`
    pub a: GenSeries,
    /// `Σ_σ sgn σ T_{σ(1),1}(u+N-1) ⋯ T_{σ(N),N}(u)`
    pub a_reversed: GenSeries,
    pub b: GenSeries,
}

fn perm_sign(p: &[usize]) -> Scalar {
    let inversions = (0..p.len())
        .flat_map(|a| (a + 1..p.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| p[a] > p[b])
        .count();
    sign(inversions)
}

/// `Σ_σ sgn σ Π_k f(k, σ(k))`, factors left to right in `k = 1..N`.
fn alternating_sum(n_half: usize, order: usize, f: impl Fn(usize, usize) -> GenSeries) -> GenSeries {
    let mut acc = GenSeries::zero(order);
    for p in (1..=n_half).permutations(n_half) {
        let mut prod = GenSeries::one(order);
        for (k, &s) in p.iter().enumerate() {
            prod = prod.mul(&f(k + 1, s));
        }
        acc = acc.add(&prod.scale(&perm_sign(&p)));
    }
    acc
}

fn t_at(i: usize, j: usize, order: usize) -> GenSeries {
    t_series(i as i32, j as i32, order)
}

impl BerezinianSeries {
    pub fn new(n_half: usize, order: usize) -> Self {
        let n = n_half as i64;
        let a = alternating_sum(n_half, order, |k, s| {
            t_at(k, s, order).reexpand_shift(&int(k as i64 - 1))
        });
        let a_reversed = alternating_sum(n_half, order, |k, s| {
            t_at(s, k, order).reexpand_shift(&int(n - k as i64))
        });
        // the k-th argument of A(1-N-u) is -(u + N - k)
        let a_reflected = alternating_sum(n_half, order, |k, s| {
            t_at(k, s, order).reflect_shift(&int(n - k as i64))
        });
        let b = a.mul(&a_reflected);
        BerezinianSeries {
            n_half,
            order,
            a,
            a_reversed,
            b,
        }
    }

    pub fn b_coeff(&self, r: usize) -> &AlgebraElement {
        self.b.coeff(r)
    }
}

/// Sum of the `E`-degrees of the letters when all words agree, else `None`.
pub fn e_grading(x: &AlgebraElement) -> Option<i32> {
    let mut degrees = x.terms().map(|(w, _)| w.iter().map(|g| g.e_degree()).sum::<i32>());
    let first = degrees.next().unwrap_or(0);
    degrees.all(|d| d == first).then_some(first)
}

fn nf_witness(sys: &ReductionSystem, x: &AlgebraElement) -> Result<Option<String>> {
    let nf = sys.normal_form(x)?;
    Ok((!nf.is_zero()).then(|| nf.to_string()))
}

/// The two orderings of `A(u)` agree coefficientwise in `Y(p_N)`.
pub fn check_a_forms(n_half: usize, order: usize) -> CheckReport {
    let mut rec = Recorder::new("center-a-forms").param("N", n_half).param("order", order);
    let s = BerezinianSeries::new(n_half, order);
    let sys = ReductionSystem::new(n_half, order as u32);
    rec.check(s.a.coeff(0) == &AlgebraElement::one(), || {
        "leading term of A is not 1".into()
    });
    for r in 1..=order {
        let diff = s.a.coeff(r).sub(s.a_reversed.coeff(r));
        rec.check_result(format!("A^({r})"), nf_witness(&sys, &diff));
    }
    rec.finish()
}

/// Supercommutators of `x` with every `T_kl^(s)`, `s ≤ max_s`, reduce to 0.
fn commutators(rec: &mut Recorder, sys: &ReductionSystem, n_half: usize, label: &str, x: &AlgebraElement, max_s: u32) {
    let idx = indices(n_half);
    let jobs: Vec<(i32, i32, u32)> = idx
        .iter()
        .flat_map(|&k| idx.iter().map(move |&l| (k, l)))
        .flat_map(|(k, l)| (1..=max_s).map(move |s| (k, l, s)))
        .collect();
    let out: Vec<(String, Result<Option<String>>)> = jobs
        .into_par_iter()
        .map(|(k, l, s)| {
            let c = x.supercommutator(&AlgebraElement::t(k, l, s));
            (format!("[{label}, T[{k},{l},{s}]]"), nf_witness(sys, &c))
        })
        .collect();
    for (l, r) in out {
        rec.check_result(l, r);
    }
}

/// `[B^(r), T_kl^(s)]` has normal form 0 for `r ≤ max_r`, `s ≤ max_s` and
/// all `k, l`. The generator-order budget defaults to `max_r + max_s`, the
/// largest total order in play, which no rule can exceed.
pub fn check_centrality(n_half: usize, max_r: usize, max_s: u32, budget: Option<u32>) -> CheckReport {
    let cap = budget.unwrap_or(max_r as u32 + max_s);
    let mut rec = Recorder::new("center-centrality")
        .param("N", n_half)
        .param("max_r", max_r)
        .param("max_s", max_s)
        .param("budget", cap);
    let s = BerezinianSeries::new(n_half, max_r);
    let sys = ReductionSystem::new(n_half, cap);
    for r in 1..=max_r {
        commutators(&mut rec, &sys, n_half, &format!("B^({r})"), s.b_coeff(r), max_s);
    }
    rec.finish()
}

/// The same check for `T_11^(2)` in place of `B^(2)`; it is not central, so
/// this must fail.
pub fn check_centrality_control(n_half: usize, max_s: u32) -> CheckReport {
    let mut rec = Recorder::new("control-center-t2")
        .param("N", n_half)
        .param("max_s", max_s);
    let sys = ReductionSystem::new(n_half, 2 + max_s);
    commutators(&mut rec, &sys, n_half, "T[1,1,2]", &AlgebraElement::t(1, 1, 2), max_s);
    rec.finish()
}

/// Centrality of `B^(r)` in `X(p_N)` without the rewriting rules: each
/// `[B^(r), T_kl^(s)]` lies in the span of the RTT relations of weight
/// `≤ r+s`. Failure to lie there is reported, though it only proves that
/// more room is needed.
pub fn check_centrality_in_x(n_half: usize, r: usize, s: u32) -> CheckReport {
    let mut rec = Recorder::new("center-centrality-in-x")
        .param("N", n_half)
        .param("r", r)
        .param("s", s);
    let b = BerezinianSeries::new(n_half, r);
    let ideal = FilteredIdeal::new(n_half, r as u32 + s, false);
    let idx = indices(n_half);
    for &k in &idx {
        for &l in &idx {
            let c = b.b_coeff(r).supercommutator(&AlgebraElement::t(k, l, s));
            rec.check(ideal.contains(&c), || {
                format!("[B^({r}), T[{k},{l},{s}]] is not in the weight-{} span", r as u32 + s)
            });
        }
    }
    rec.finish()
}

/// The image of `B^(2r)` in `gr′ Y(p_N)` is `2Y_11^(2r) + … + 2Y_NN^(2r)`:
/// the component of filtration degree `2r-1` of the normal form of `B^(2r)`
/// equals that of `2 Σ_k T_kk^(2r)`, and nothing of higher degree survives.
pub fn check_gr_image(n_half: usize, rs: &[usize]) -> CheckReport {
    let mut rec = Recorder::new("center-gr-image")
        .param("N", n_half)
        .param("r", rs.to_vec());
    let top = rs.iter().map(|r| 2 * r).max().unwrap_or(0);
    let s = BerezinianSeries::new(n_half, top);
    let sys = ReductionSystem::new(n_half, top as u32);
    for &r in rs {
        let d = 2 * r as u32 - 1;
        let res = (|| {
            let nb = sys.normal_form(s.b_coeff(2 * r))?;
            let mut want = AlgebraElement::zero();
            for k in 1..=n_half as i32 {
                want.add_scaled(&AlgebraElement::t(k, k, 2 * r as u32), &int(2));
            }
            let nw = sys.normal_form(&want)?;
            Ok(if nb.filtration_degree() != Some(d) {
                Some(format!("normal form {nb} does not have degree {d}"))
            } else if nb.filtration_component(d) != nw.filtration_component(d) {
                Some(format!(
                    "top part {} differs from {}",
                    nb.filtration_component(d),
                    nw.filtration_component(d)
                ))
            } else {
                None
            })
        })();
        rec.check_result(format!("B^({})", 2 * r), res);
    }
    rec.finish()
}

/// The normal forms of `B^(2)`, `B^(4)` and `B^(2)B^(2)` are linearly
/// independent.
pub fn check_independence(n_half: usize) -> CheckReport {
    let mut rec = Recorder::new("center-independence").param("N", n_half);
    let s = BerezinianSeries::new(n_half, 4);
    let sys = ReductionSystem::new(n_half, 4);
    let b2 = s.b_coeff(2);
    let res = (|| {
        let elems = [
            sys.normal_form(b2)?,
            sys.normal_form(s.b_coeff(4))?,
            sys.normal_form(&b2.mul(b2))?,
        ];
        let words: Vec<_> = elems
            .iter()
            .flat_map(|e| e.terms().map(|(w, _)| w.clone()))
            .unique()
            .collect();
        let rows = elems.iter().map(|e| {
            words
                .iter()
                .enumerate()
                .filter_map(|(k, w)| {
                    let c = e.coeff(w);
                    (!c.is_zero()).then_some((k, c))
                })
                .collect()
        });
        let rank = crate::reps::Subspace::spanned_by(words.len(), rows).rank();
        Ok((rank < 3).then(|| format!("rank {rank}: {} | {} | {}", elems[0], elems[1], elems[2])))
    })();
    rec.check_result("B^(2), B^(4), B^(2)B^(2)", res);
    rec.finish()
}

/// `S(B(u)) = B(u)^{-1}` through `order`: coefficientwise, the normal forms
/// of `S(B^(k))` and of the `k`-th coefficient of the inverse series agree.
/// Also `ε(B(u)) = 1`.
pub fn check_antipode(n_half: usize, order: usize) -> CheckReport {
    let mut rec = Recorder::new("center-antipode")
        .param("N", n_half)
        .param("order", order);
    let s = BerezinianSeries::new(n_half, order);
    let sys = ReductionSystem::new(n_half, order as u32);
    let anti = Antipode::new(n_half, order);
    for k in 1..=order {
        rec.check(s.b_coeff(k).constant_term().is_zero(), || format!("ε(B^({k})) ≠ 0"));
    }
    match s.b.invert() {
        Ok(inv) => {
            for k in 1..=order {
                let res = (|| {
                    let lhs = anti.apply(s.b_coeff(k))?;
                    nf_witness(&sys, &lhs.sub(inv.coeff(k)))
                })();
                rec.check_result(format!("S(B^({k}))"), res);
            }
        }
        Err(e) => rec.error("B(u)^-1", e),
    }
    rec.finish()
}

/// Every word of every coefficient of `Z(u)` and `B(u)` has `E`-degree 0.
pub fn check_e_grading(n_half: usize, order: usize) -> CheckReport {
    let mut rec = Recorder::new("center-e-grading")
        .param("N", n_half)
        .param("order", order);
    let s = BerezinianSeries::new(n_half, order);
    for r in 1..=order {
        let b = s.b_coeff(r);
        rec.check(e_grading(b) == Some(0), || {
            format!("B^({r}) has E-degree {:?}", e_grading(b))
        });
        for &anchor in &indices(n_half) {
            let z = z_series(n_half, order, anchor, ZForm::LeftAnchored);
            let zr = z.coeff(r);
            rec.check(e_grading(zr) == Some(0), || {
                format!("Z^({r}), anchor {anchor}, has E-degree {:?}", e_grading(zr))
            });
        }
    }
    rec.finish()
}

/// Normal forms of the odd coefficients `B^(1), B^(3), …`, recorded as
/// parameters. Nothing is asserted about them.
pub fn odd_coefficients(n_half: usize, order: usize) -> CheckReport {
    let mut rec = Recorder::new("center-odd-coefficients")
        .param("N", n_half)
        .param("order", order);
    let s = BerezinianSeries::new(n_half, order);
    let sys = ReductionSystem::new(n_half, order as u32);
    for r in (1..=order).step_by(2) {
        match sys.normal_form(s.b_coeff(r)) {
            Ok(nf) => rec = rec.param(&format!("B^({r})"), nf.to_string()),
            Err(e) => rec.error(format!("B^({r})"), e),
        }
    }
    rec.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superlinalg::parity;
    use crate::yangian::GenTriple;

    #[test]
    fn n1_series_is_t11_times_its_reflection() {
        let s = BerezinianSeries::new(1, 4);
        let x = AlgebraElement::t(1, 1, 1);
        assert!(s.b_coeff(1).is_zero());
        assert_eq!(s.b_coeff(2), &AlgebraElement::t(1, 1, 2).scale(&int(2)).sub(&x.mul(&x)));
        assert_eq!(s.a, t_series(1, 1, 4));
        assert_eq!(s.a, s.a_reversed);
    }

    #[test]
    fn n2_a_has_the_shifted_second_factor() {
        let s = BerezinianSeries::new(2, 2);
        // A^(1) = T_11^(1) + T_22^(1); A^(2) picks up -T_22^(1) from (u+1)^-1
        let a1 = AlgebraElement::t(1, 1, 1).add(&AlgebraElement::t(2, 2, 1));
        assert_eq!(s.a.coeff(1), &a1);
        let a2 = s.a.coeff(2);
        assert_eq!(a2.coeff(&[GenTriple::of_order(2, 2, 1)]), int(-1));
        assert_eq!(
            a2.coeff(&[GenTriple::of_order(1, 2, 1), GenTriple::of_order(2, 1, 1)]),
            int(-1)
        );
        assert_eq!(s.b.coeff(0), &AlgebraElement::one());
    }

    #[test]
    fn e_degrees() {
        assert_eq!(e_grading(&AlgebraElement::t(1, -1, 3)), Some(1));
        assert_eq!(e_grading(&AlgebraElement::t(-2, 1, 1)), Some(-1));
        let mixed = AlgebraElement::t(1, -1, 1).add(&AlgebraElement::t(1, 1, 1));
        assert_eq!(e_grading(&mixed), None);
        let r = check_e_grading(2, 3);
        assert!(r.passed(), "{:?}", r.witnesses);
    }

    #[test]
    fn coefficients_are_even() {
        let s = BerezinianSeries::new(2, 3);
        for r in 0..=3 {
            let b = s.b_coeff(r);
            assert!(b
                .terms()
                .all(|(w, _)| w.iter().map(|g| parity(g.i) + parity(g.j)).sum::<usize>() % 2 == 0));
        }
    }

    #[test]
    fn central_in_x_at_low_weight() {
        let r = check_centrality_in_x(1, 2, 1);
        assert!(r.passed(), "{:?}", r.witnesses);
    }

    #[test]
    fn control_is_not_central() {
        let r = check_centrality_control(1, 1);
        assert!(!r.passed());
        assert!(!r.witnesses.is_empty());
    }

    #[test]
    fn b1_vanishes_identically() {
        let r = odd_coefficients(1, 1);
        assert_eq!(r.params["B^(1)"], "0");
    }
}
