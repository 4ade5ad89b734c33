//! The R-matrix `R(u,v) = 1 - P/(u-v) + Q/(u+v)`, the Yang–Baxter equation,
//! the fused operator `H(u)` and the operator strings used to prove that
//! `B(u)` is central.

mod fusion;
mod proof;
mod relations;

pub use fusion::{
    check_h_absorbs_pq, check_h_antisymmetrizer, check_h_idempotent, check_h_q_reduction,
    check_h_q_reduction_with_coefficient, check_h_relabel_invariance, check_h_reorder, check_hfusion, fused_h,
    h_factors,
};
pub use proof::{
    c_factors, check_cuv, check_f_coefficients, check_fusion_actions, check_h_vector_exchange, check_q_sandwich,
    d_factors, f_factors, hh_factors, ProofVectors,
};
pub use relations::{check_relation_suite, relation_suite, Relation};

use std::fmt::Display;

use rayon::prelude::*;

use crate::error::Result;
use crate::report::{CheckReport, Recorder};
use crate::scalars::{RatFunc, Scalar, Var};
use crate::superlinalg::{apply_product, p_operator, q_operator, GradedOperator, Ring, Space, SuperVector};

pub type Op = GradedOperator<RatFunc>;
pub type Vector = SuperVector<RatFunc>;

/// `c_u·u + c_v·v + c_w·w + c`.
pub fn affine(cu: i64, cv: i64, cw: i64, c: i64) -> RatFunc {
    let mut x = RatFunc::int(c);
    for (k, var) in [(cu, Var::U), (cv, Var::V), (cw, Var::W)] {
        if k != 0 {
            x = &x + &RatFunc::linear(var, k, 0);
        }
    }
    x
}

/// A factor `R_{pq}(a, b)` of an operator string; slots are 1-based.
#[derive(Clone, Debug)]
pub struct RFactor {
    pub p: usize,
    pub q: usize,
    pub a: RatFunc,
    pub b: RatFunc,
}

impl RFactor {
    pub fn new(p: usize, q: usize, a: RatFunc, b: RatFunc) -> Self {
        RFactor { p, q, a, b }
    }

    pub fn build(&self, n_half: usize, arity: usize) -> Result<Op> {
        r_factor(n_half, arity, self.p, self.q, &self.a, &self.b, 1)
    }
}

/// `R_{pq}(a,b)` in arity `n`; `q_sign = -1` gives the mutated matrix with
/// the `Q` term negated.
pub fn r_factor(n_half: usize, arity: usize, p: usize, q: usize, a: &RatFunc, b: &RatFunc, q_sign: i64) -> Result<Op> {
    let cp = (a - b).inv()?.scale(&crate::scalars::int(-1));
    let cq = (a + b).inv()?.scale(&crate::scalars::int(q_sign));
    let space = Space::new(n_half, arity);
    let pe = p_operator::<Scalar>(n_half).embed(&[p, q], arity)?;
    let qe = q_operator::<Scalar>(n_half).embed(&[p, q], arity)?;
    let lift = |x: &GradedOperator<Scalar>, c: &RatFunc| x.map_coeffs(|s| c.scale(s));
    Op::identity(space).add(&lift(&pe, &cp))?.add(&lift(&qe, &cq))
}

/// `R(a,b)` acting on `(C^{N|N})^{⊗2}`.
pub fn r_matrix(n_half: usize, a: &RatFunc, b: &RatFunc) -> Result<Op> {
    r_factor(n_half, 2, 1, 2, a, b, 1)
}

/// `R(u,v)`.
pub fn build_r(n_half: usize) -> Op {
    r_matrix(n_half, &RatFunc::var(Var::U), &RatFunc::var(Var::V)).expect("u ≠ ±v")
}

pub fn build_factors(factors: &[RFactor], n_half: usize, arity: usize) -> Result<Vec<Op>> {
    factors.iter().map(|f| f.build(n_half, arity)).collect()
}

/// Product of operators, leftmost first.
pub fn product(ops: &[Op]) -> Result<Op> {
    let mut it = ops.iter();
    let first = it.next().expect("nonempty product").clone();
    it.try_fold(first, |acc, x| acc.compose(x))
}

pub fn substitute(op: &Op, var: Var, value: &RatFunc) -> Result<Op> {
    op.try_map_coeffs(|x| x.substitute(var, value))
}

fn show_idx(idx: &[i32]) -> String {
    let parts: Vec<String> = idx.iter().map(i32::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// Witness for the first differing entry, or `None` when equal.
pub fn operator_diff<F: Ring + Display>(lhs: &GradedOperator<F>, rhs: &GradedOperator<F>) -> Result<Option<String>> {
    Ok(lhs
        .first_difference(rhs)?
        .map(|(r, c, a, b)| format!("entry {} <- {}: lhs = {a}, rhs = {b}", show_idx(&r), show_idx(&c))))
}

pub fn vector_diff<F: Ring + Display>(lhs: &SuperVector<F>, rhs: &SuperVector<F>) -> Result<Option<String>> {
    Ok(lhs
        .first_difference(rhs)?
        .map(|(k, a, b)| format!("coefficient at {}: lhs = {a}, rhs = {b}", show_idx(&k))))
}

/// Compares two operator products column by column without forming them.
/// Returns a witness for the smallest failing column.
pub fn compare_products(lhs: &[&Op], rhs: &[&Op], space: Space) -> Result<Option<String>> {
    let cols: Vec<u32> = space.basis().collect();
    let found: Vec<(u32, String)> = cols
        .par_iter()
        .filter_map(|&c| {
            let e = Vector::from_code(space, c);
            let l = apply_product(lhs, &e);
            let r = apply_product(rhs, &e);
            let w = match (l, r) {
                (Ok(l), Ok(r)) => vector_diff(&l, &r).ok().flatten(),
                (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
            };
            w.map(|w| (c, format!("column {}: {w}", show_idx(&space.decode(c)))))
        })
        .collect();
    Ok(found.into_iter().min_by_key(|(c, _)| *c).map(|(_, w)| w))
}

fn ybe_sides(n_half: usize, q_sign: i64) -> Result<(Vec<Op>, Vec<Op>)> {
    let (u, v, w) = (affine(1, 0, 0, 0), affine(0, 1, 0, 0), affine(0, 0, 1, 0));
    let r12 = r_factor(n_half, 3, 1, 2, &u, &v, q_sign)?;
    let r13 = r_factor(n_half, 3, 1, 3, &u, &w, q_sign)?;
    let r23 = r_factor(n_half, 3, 2, 3, &v, &w, q_sign)?;
    Ok((vec![r12.clone(), r13.clone(), r23.clone()], vec![r23, r13, r12]))
}

/// `R₁₂(u,v)R₁₃(u,w)R₂₃(v,w) = R₂₃(v,w)R₁₃(u,w)R₁₂(u,v)`, exactly in `u, v, w`.
pub fn check_ybe(n_half: usize) -> CheckReport {
    ybe_report("ybe", n_half, 1)
}

/// The same equation for `1 - P/(u-v) - Q/(u+v)`, which must fail.
pub fn check_ybe_mutated(n_half: usize) -> CheckReport {
    ybe_report("ybe-mutated-q-sign", n_half, -1)
}

fn ybe_report(name: &str, n_half: usize, q_sign: i64) -> CheckReport {
    let mut rec = Recorder::new(name).param("N", n_half);
    let res = ybe_sides(n_half, q_sign).and_then(|(l, r)| {
        let l: Vec<&Op> = l.iter().collect();
        let r: Vec<&Op> = r.iter().collect();
        compare_products(&l, &r, Space::new(n_half, 3))
    });
    rec.check_result("R12 R13 R23 = R23 R13 R12", res);
    rec.finish()
}

/// `R(u,v)R(-u,-v) = 1 - 1/(u-v)²`.
pub fn check_unitarity(n_half: usize) -> CheckReport {
    let mut rec = Recorder::new("unitarity").param("N", n_half);
    let res = (|| {
        let (u, v) = (affine(1, 0, 0, 0), affine(0, 1, 0, 0));
        let lhs = r_matrix(n_half, &u, &v)?.compose(&r_matrix(n_half, &-&u, &-&v)?)?;
        let c = &RatFunc::one() - &(&u - &v).pow(2).inv()?;
        let rhs = Op::scalar(Space::new(n_half, 2), c);
        operator_diff(&lhs, &rhs)
    })();
    rec.check_result("R(u,v) R(-u,-v)", res);
    rec.finish()
}

/// `(τπ⊗1)R(u,v) = R(u,-v)` and `(1⊗τπ)R(u,v) = R(-u,v)`.
pub fn check_tau_pi_symmetry(n_half: usize) -> CheckReport {
    let mut rec = Recorder::new("tau-pi-symmetry").param("N", n_half);
    let (u, v) = (affine(1, 0, 0, 0), affine(0, 1, 0, 0));
    let r = build_r(n_half);
    let first = (|| operator_diff(&r.tau_pi_slot(1)?, &r_matrix(n_half, &u, &-&v)?))();
    rec.check_result("(τπ⊗1)R(u,v) = R(u,-v)", first);
    let second = (|| operator_diff(&r.tau_pi_slot(2)?, &r_matrix(n_half, &-&u, &v)?))();
    rec.check_result("(1⊗τπ)R(u,v) = R(-u,v)", second);
    rec.finish()
}
