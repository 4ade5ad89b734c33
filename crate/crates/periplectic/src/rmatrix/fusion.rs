use itertools::Itertools;

use super::{affine, build_factors, compare_products, operator_diff, product, vector_diff, Op, RFactor, Vector};
use crate::error::Result;
use crate::report::{CheckReport, Recorder};
use crate::scalars::{factorial, RatFunc};
use crate::superlinalg::{p_operator, q_operator, Space};

/// Factors of `H(x) = Π_{p<q} R_{pq}(x+n-p, x+n-q)`, pairs in lexicographic
/// order, placed on slots `offset+1 … offset+n`.
pub fn h_factors(n: usize, x: &RatFunc, offset: usize) -> Vec<RFactor> {
    let shift = |k: usize| x + &RatFunc::int(k as i64);
    (1..=n)
        .tuple_combinations()
        .map(|(p, q)| RFactor::new(offset + p, offset + q, shift(n - p), shift(n - q)))
        .collect()
}

/// `H(x)` as an operator on `(C^{N|N})^{⊗n}`; the identity when `n = 1`.
pub fn fused_h(n_half: usize, n: usize, x: &RatFunc) -> Result<Op> {
    let f = build_factors(&h_factors(n, x, 0), n_half, n)?;
    if f.is_empty() {
        return Ok(Op::identity(Space::new(n_half, n)));
    }
    product(&f)
}

fn pq(n_half: usize, n: usize, p: usize, q: usize) -> Result<(Op, Op)> {
    let lift =
        |x: crate::superlinalg::GradedOperator<crate::scalars::Scalar>| x.map_coeffs(|s| RatFunc::constant(s.clone()));
    Ok((
        lift(p_operator(n_half).embed(&[p, q], n)?),
        lift(q_operator(n_half).embed(&[p, q], n)?),
    ))
}

/// `P_{pq}H(u) = -H(u)` and `Q_{pq}H(u) = 0` for all `p < q`.
pub fn check_h_absorbs_pq(n_half: usize, n: usize) -> CheckReport {
    let mut rec = Recorder::new(format!("h-absorbs-pq-n{n}"))
        .param("N", n_half)
        .param("n", n);
    let h = match fused_h(n_half, n, &affine(1, 0, 0, 0)) {
        Ok(h) => h,
        Err(e) => {
            rec.error("H(u)", e);
            return rec.finish();
        }
    };
    for (p, q) in (1..=n).tuple_combinations() {
        let res = (|| {
            let (pp, qq) = pq(n_half, n, p, q)?;
            Ok((
                operator_diff(&pp.compose(&h)?, &h.neg())?,
                operator_diff(&qq.compose(&h)?, &Op::zero(h.space()))?,
            ))
        })();
        match res {
            Ok((a, b)) => {
                rec.check_opt(format!("P{p}{q} H = -H"), a);
                rec.check_opt(format!("Q{p}{q} H = 0"), b);
            }
            Err(e) => rec.error(format!("pair {p}{q}"), e),
        }
    }
    rec.finish()
}

/// `H(u)H(u) = n!·H(u)`.
pub fn check_h_idempotent(n_half: usize, n: usize) -> CheckReport {
    let mut rec = Recorder::new(format!("h-squared-n{n}"))
        .param("N", n_half)
        .param("n", n);
    let res = (|| {
        let h = fused_h(n_half, n, &affine(1, 0, 0, 0))?;
        operator_diff(&h.compose(&h)?, &h.scale(&factorial(n)))
    })();
    rec.check_result("H H = n! H", res);
    rec.finish()
}

/// `H(u)Q_{p,p+1} = (2u+2n-2p-1)H(u)(1+P_{p,p+1})`.
pub fn check_h_q_reduction(n_half: usize, n: usize) -> CheckReport {
    check_h_q_reduction_with_coefficient(n_half, n, "h-q-reduction", |n, p| {
        affine(2, 0, 0, 2 * n as i64 - 2 * p as i64 - 1)
    })
}

/// The same reduction with the scalar factor replaced by `coeff(n, p)`.
pub fn check_h_q_reduction_with_coefficient(
    n_half: usize,
    n: usize,
    name: &str,
    coeff: impl Fn(usize, usize) -> RatFunc,
) -> CheckReport {
    let mut rec = Recorder::new(format!("{name}-n{n}")).param("N", n_half).param("n", n);
    let h = match fused_h(n_half, n, &affine(1, 0, 0, 0)) {
        Ok(h) => h,
        Err(e) => {
            rec.error("H(u)", e);
            return rec.finish();
        }
    };
    for p in 1..n {
        let res = (|| {
            let (pp, qq) = pq(n_half, n, p, p + 1)?;
            let lhs = h.compose(&qq)?;
            let one_plus_p = Op::identity(h.space()).add(&pp)?;
            let rhs = h.compose(&one_plus_p)?.scale_by(&coeff(n, p));
            operator_diff(&lhs, &rhs)
        })();
        rec.check_result(format!("H Q{p}{} = c H (1 + P{p}{})", p + 1, p + 1), res);
    }
    rec.finish()
}

/// On distinct positive indices `H(u)` is the plain antisymmetrizer.
pub fn check_h_antisymmetrizer(n_half: usize, n: usize) -> CheckReport {
    let mut rec = Recorder::new(format!("h-antisymmetrizer-n{n}"))
        .param("N", n_half)
        .param("n", n);
    if n > n_half {
        rec.check(true, String::new);
        return rec.finish();
    }
    let res = (|| {
        let h = fused_h(n_half, n, &affine(1, 0, 0, 0))?;
        let idx: Vec<i32> = (1..=n as i32).collect();
        let lhs = h.apply(&Vector::basis(n_half, &idx)?)?;
        let mut rhs = Vector::zero(h.space());
        for perm in (0..n).permutations(n) {
            let inversions = perm.iter().tuple_combinations().filter(|(a, b)| a > b).count();
            let e: Vec<i32> = perm.iter().map(|&k| idx[k]).collect();
            let sign = RatFunc::int(if inversions % 2 == 0 { 1 } else { -1 });
            rhs = rhs.add(&Vector::basis(n_half, &e)?.scale_by(&sign))?;
        }
        vector_diff(&lhs, &rhs)
    })();
    rec.check_result("H e_1⊗…⊗e_n = Σ sgn(σ) e_σ", res);
    rec.finish()
}

/// `H(u)` commutes with renaming `±1 ↔ ±2`.
pub fn check_h_relabel_invariance(n_half: usize, n: usize) -> CheckReport {
    let mut rec = Recorder::new(format!("h-relabel-n{n}"))
        .param("N", n_half)
        .param("n", n);
    let res = (|| {
        let h = fused_h(n_half, n, &affine(1, 0, 0, 0))?;
        let mut perm: Vec<usize> = (1..=n_half).collect();
        if n_half >= 2 {
            perm.swap(0, 1);
        }
        operator_diff(&h.relabel(&perm)?, &h)
    })();
    rec.check_result("σ(H) = H", res);
    rec.finish()
}

/// Reversing the factor order of `H(u)` for `n = 3` does not change it.
pub fn check_h_reorder(n_half: usize) -> CheckReport {
    let mut rec = Recorder::new("h-reorder-n3").param("N", n_half);
    let res = (|| {
        let f = build_factors(&h_factors(3, &affine(1, 0, 0, 0), 0), n_half, 3)?;
        let lhs: Vec<&Op> = f.iter().collect();
        let rhs: Vec<&Op> = f.iter().rev().collect();
        compare_products(&lhs, &rhs, Space::new(n_half, 3))
    })();
    rec.check_result("R12 R13 R23 = R23 R13 R12 at fused arguments", res);
    rec.finish()
}

/// Every fusion identity for `H(u)` at arity `n`.
pub fn check_hfusion(n_half: usize, n: usize) -> Vec<CheckReport> {
    let mut out = vec![
        check_h_absorbs_pq(n_half, n),
        check_h_idempotent(n_half, n),
        check_h_q_reduction(n_half, n),
        check_h_antisymmetrizer(n_half, n),
    ];
    if n_half >= 2 {
        out.push(check_h_relabel_invariance(n_half, n));
    }
    if n == 3 {
        out.push(check_h_reorder(n_half));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superlinalg::SuperVector;

    #[test]
    fn factor_order_is_lexicographic() {
        let f = h_factors(3, &affine(1, 0, 0, 0), 0);
        let pairs: Vec<(usize, usize)> = f.iter().map(|r| (r.p, r.q)).collect();
        assert_eq!(pairs, vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(f[0].a, affine(1, 0, 0, 2));
        assert_eq!(f[0].b, affine(1, 0, 0, 1));
    }

    #[test]
    fn two_fold_antisymmetrizer() {
        let h = fused_h(2, 2, &affine(1, 0, 0, 0)).unwrap();
        let x = h.apply(&SuperVector::basis(2, &[1, 2]).unwrap()).unwrap();
        let want = SuperVector::basis(2, &[1, 2])
            .unwrap()
            .sub(&SuperVector::basis(2, &[2, 1]).unwrap())
            .unwrap();
        assert_eq!(x, want);
    }

    #[test]
    fn fusion_identities_small() {
        for n_half in 1..=2 {
            for n in 2..=3 {
                for r in check_hfusion(n_half, n) {
                    assert!(r.passed(), "{} {:?}", r.name, r.witnesses);
                }
            }
        }
    }

    #[test]
    fn h_q_reduction_with_wrong_coefficient_fails() {
        let r = check_h_q_reduction_with_coefficient(1, 2, "h-q-reduction-control", |_, _| affine(2, 0, 0, 0));
        assert!(!r.passed());
        assert!(!r.witnesses.is_empty());
    }
}
