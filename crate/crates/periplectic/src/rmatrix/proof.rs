//! Vector-level identities for the strings `F(u,v)`, `C(u,v)`, `D(u,v)` on
//! `(C^{N|N})^{⊗(2N+1)}`.
//!
//! Each "has the same effect" statement is checked as an equality of images
//! under the named projection, never modulo anything.

use rayon::prelude::*;

use super::{affine, build_factors, compare_products, operator_diff, r_factor, vector_diff, Op, RFactor, Vector};
use crate::error::Result;
use crate::report::{CheckReport, Recorder};
use crate::scalars::{RatFunc, Scalar};
use crate::superlinalg::{apply_product, apply_product_right, q_operator, Space};

use super::fusion::h_factors;

/// Factors of `R_{s_1,t}(x+n-1, v) … R_{s_n,t}(x, v)`.
pub fn f_factors(x: &RatFunc, v: &RatFunc, slots: &[usize], target: usize) -> Vec<RFactor> {
    let n = slots.len();
    slots
        .iter()
        .enumerate()
        .map(|(k, &s)| RFactor::new(s, target, x + &RatFunc::int((n - 1 - k) as i64), v.clone()))
        .collect()
}

/// `1 - N - u`.
fn reflected(n_half: usize) -> RatFunc {
    affine(-1, 0, 0, 1 - n_half as i64)
}

/// `H(u) ⊗ H(1-N-u) ⊗ 1` on `2N+1` slots.
pub fn hh_factors(n_half: usize) -> Vec<RFactor> {
    let mut f = h_factors(n_half, &affine(1, 0, 0, 0), 0);
    f.extend(h_factors(n_half, &reflected(n_half), n_half));
    f
}

/// `C(u,v) = F′(u,v) F″(1-u-N, v)`.
pub fn c_factors(n_half: usize) -> Vec<RFactor> {
    let v = affine(0, 1, 0, 0);
    let t = 2 * n_half + 1;
    let first: Vec<usize> = (1..=n_half).collect();
    let second: Vec<usize> = (n_half + 1..=2 * n_half).collect();
    let mut f = f_factors(&affine(1, 0, 0, 0), &v, &first, t);
    f.extend(f_factors(&reflected(n_half), &v, &second, t));
    f
}

/// `D(u,v) = R_{N,2N+1}(u,v) … R_{1,2N+1}(u+N-1,v) R_{2N,2N+1}(1-u-N,v) … R_{N+1,2N+1}(-u,v)`.
pub fn d_factors(n_half: usize) -> Vec<RFactor> {
    let v = affine(0, 1, 0, 0);
    let t = 2 * n_half + 1;
    let n = n_half as i64;
    let mut f: Vec<RFactor> = (1..=n_half)
        .rev()
        .map(|k| RFactor::new(k, t, affine(1, 0, 0, n - k as i64), v.clone()))
        .collect();
    let x = reflected(n_half);
    f.extend(
        (n_half + 1..=2 * n_half)
            .rev()
            .map(|k| RFactor::new(k, t, &x + &RatFunc::int(2 * n - k as i64), v.clone())),
    );
    f
}

/// The distinguished vectors and scalars of the centrality proof.
#[derive(Clone, Copy, Debug)]
pub struct ProofVectors {
    pub n_half: usize,
}

type Terms = Vec<(RatFunc, Vec<i32>)>;

impl ProofVectors {
    pub fn new(n_half: usize) -> Self {
        ProofVectors { n_half }
    }

    /// `1, 2, …, N`.
    pub fn seq(&self) -> Vec<i32> {
        (1..=self.n_half as i32).collect()
    }

    /// `e_1⊗…⊗e_{k-1}⊗e_{k+1}⊗…⊗e_N` as an index list.
    pub fn d(&self, k: i32) -> Vec<i32> {
        self.seq().into_iter().filter(|&i| i != k).collect()
    }

    /// `seq` with position `k` replaced by `-1`.
    fn minus_one_at(&self, k: i32) -> Vec<i32> {
        let mut s = self.seq();
        s[k as usize - 1] = -1;
        s
    }

    /// `-k, 2, …, N`.
    fn minus_k_first(&self, k: i32) -> Vec<i32> {
        let mut s = self.seq();
        s[0] = -k;
        s
    }

    /// `f_j = e_1⊗…⊗e_N⊗e_1⊗…⊗e_N⊗e_j`.
    pub fn f_index(&self, j: i32) -> Vec<i32> {
        let mut s = self.seq();
        s.extend(self.seq());
        s.push(j);
        s
    }

    pub fn f(&self, j: i32) -> Result<Vector> {
        Vector::basis(self.n_half, &self.f_index(j))
    }

    /// `e_1⊗…⊗e_N⊗e_1⊗…⊗e_N`.
    pub fn onedim(&self) -> Result<Vector> {
        let mut s = self.seq();
        s.extend(self.seq());
        Vector::basis(self.n_half, &s)
    }

    /// `z = u - v`.
    pub fn z(&self) -> RatFunc {
        affine(1, -1, 0, 0)
    }

    /// `w = u + v + N - 1`.
    pub fn w(&self) -> RatFunc {
        affine(1, 1, 0, self.n_half as i64 - 1)
    }

    /// `(z-1)(w+1)/(zw)`.
    pub fn scalar(&self) -> RatFunc {
        let (z, w) = (self.z(), self.w());
        let one = RatFunc::one();
        &(&(&z - &one) * &(&w + &one)) / &(&z * &w)
    }

    /// `a(u) = 2/(2u+N+1)` and `b(u) = (2u+N-1)/(2u+N+1)`.
    pub fn ab(&self) -> (RatFunc, RatFunc) {
        let n = self.n_half as i64;
        let den = affine(2, 0, 0, n + 1);
        (&RatFunc::int(2) / &den, &affine(2, 0, 0, n - 1) / &den)
    }

    pub fn combine(&self, terms: Terms) -> Result<Vector> {
        let arity = terms.first().map(|t| t.1.len()).unwrap_or(1);
        let space = Space::new(self.n_half, arity);
        let mut v = Vector::zero(space);
        for (c, idx) in terms {
            v.add_term(space.checked_encode(&idx)?, &c);
        }
        Ok(v)
    }

    fn ks(&self) -> impl Iterator<Item = i32> {
        1..=self.n_half as i32
    }

    fn cat(parts: &[&[i32]]) -> Vec<i32> {
        parts.concat()
    }

    /// Image vector of `(H(u)⊗1)F(u,v)` on `e_1⊗…⊗e_N⊗e_{-1}`;
    /// `last_sign` is the sign of the final sum (`-1` left, `+1` right).
    fn minus_one_image(&self, last_sign: i64) -> Terms {
        let (z, w) = (self.z(), self.w());
        let mut t = vec![(&(&w + &RatFunc::one()) / &w, Self::cat(&[&self.seq(), &[-1]]))];
        for k in self.ks() {
            t.push((-&z.inv().expect("z ≠ 0"), Self::cat(&[&self.minus_one_at(k), &[k]])));
            t.push((
                w.inv().expect("w ≠ 0").scale(&crate::scalars::int(last_sign)),
                Self::cat(&[&self.minus_k_first(k), &[k]]),
            ));
        }
        t
    }

    /// The five-line combination attached to `f_{-1}` under the left action.
    fn fivel(&self) -> Terms {
        let (z, w) = (self.z(), self.w());
        let one = RatFunc::one();
        let zm = &z - &one;
        let a = &zm / &z.pow(2);
        let b = &zm / &(&z * &w);
        let s = self.seq();
        let mut t = vec![(self.scalar(), self.f_index(-1))];
        for k in self.ks() {
            let (m1, mk) = (self.minus_one_at(k), self.minus_k_first(k));
            t.push((-&a, Self::cat(&[&m1, &s, &[k]])));
            t.push((-&b, Self::cat(&[&mk, &s, &[k]])));
            t.push((b.clone(), Self::cat(&[&s, &m1, &[k]])));
            t.push((a.clone(), Self::cat(&[&s, &mk, &[k]])));
        }
        t
    }

    /// The five-line combination attached to `f_{-1}` under the right action.
    fn fiver(&self) -> Terms {
        let (z, w) = (self.z(), self.w());
        let wp = &w + &RatFunc::one();
        let a = &wp / &w.pow(2);
        let b = &wp / &(&z * &w);
        let s = self.seq();
        let mut t = vec![(self.scalar(), self.f_index(-1))];
        for k in self.ks() {
            let (m1, mk) = (self.minus_one_at(k), self.minus_k_first(k));
            t.push((a.clone(), Self::cat(&[&s, &m1, &[k]])));
            t.push((-&b, Self::cat(&[&s, &mk, &[k]])));
            t.push((-&b, Self::cat(&[&m1, &s, &[k]])));
            t.push((a.clone(), Self::cat(&[&mk, &s, &[k]])));
        }
        t
    }
}

fn built(f: &[RFactor], n_half: usize, arity: usize) -> Result<Vec<Op>> {
    build_factors(f, n_half, arity)
}

fn refs(ops: &[Op]) -> Vec<&Op> {
    ops.iter().collect()
}

fn chain<'a>(a: &'a [Op], b: &'a [Op]) -> Vec<&'a Op> {
    a.iter().chain(b.iter()).collect()
}

/// `Q₁₂R₁₃(u,v)R₂₃(-u,v) = Q₁₂(1 - 1/(u+v)²)` and its precursor
/// `-R₁₃(u,-v)P₁₂R₂₃(-u,v) = -P₁₂(1 - 1/(u+v)²)`.
pub fn check_q_sandwich(n_half: usize) -> CheckReport {
    let mut rec = Recorder::new("q-sandwich-identity").param("N", n_half);
    let (u, v) = (affine(1, 0, 0, 0), affine(0, 1, 0, 0));
    let res = (|| {
        let lift = |x: crate::superlinalg::GradedOperator<Scalar>| x.map_coeffs(|s| RatFunc::constant(s.clone()));
        let p12 = lift(crate::superlinalg::p_operator(n_half).embed(&[1, 2], 3)?);
        let q12 = lift(q_operator(n_half).embed(&[1, 2], 3)?);
        let c = &RatFunc::one() - &(&u + &v).pow(2).inv()?;
        let r23 = r_factor(n_half, 3, 2, 3, &-&u, &v, 1)?;
        let q_lhs = q12.compose(&r_factor(n_half, 3, 1, 3, &u, &v, 1)?)?.compose(&r23)?;
        let q_side = operator_diff(&q_lhs, &q12.scale_by(&c))?;
        let p_lhs = r_factor(n_half, 3, 1, 3, &u, &-&v, 1)?
            .compose(&p12)?
            .compose(&r23)?
            .neg();
        let p_side = operator_diff(&p_lhs, &p12.scale_by(&c).neg())?;
        Ok((q_side, p_side))
    })();
    match res {
        Ok((q, p)) => {
            rec.check_opt("Q12 R13(u,v) R23(-u,v) = Q12 (1 - 1/(u+v)^2)", q);
            rec.check_opt("-R13(u,-v) P12 R23(-u,v) = -P12 (1 - 1/(u+v)^2)", p);
        }
        Err(e) => rec.error("setup", e),
    }
    rec.finish()
}

/// `(H(u)⊗H(1-N-u)⊗1)C(u,v) = D(u,v)(H(u)⊗H(1-N-u)⊗1)` on every basis vector.
pub fn check_cuv(n_half: usize) -> CheckReport {
    let mut rec = Recorder::new("cuv").param("N", n_half);
    let arity = 2 * n_half + 1;
    let res = (|| {
        let hh = built(&hh_factors(n_half), n_half, arity)?;
        let c = built(&c_factors(n_half), n_half, arity)?;
        let d = built(&d_factors(n_half), n_half, arity)?;
        compare_products(&chain(&hh, &c), &chain(&d, &hh), Space::new(n_half, arity))
    })();
    rec.check_result("HH C = D HH", res);
    rec.finish()
}

/// Coefficient identities for `(H(u)⊗H(1-N-u)⊗1)C(u,v)` up to scalars, and the vanishing
/// of `f`-coefficients on the images of `Q_{N,N+1}` and `Q_{1,2N}`.
pub fn check_f_coefficients(n_half: usize) -> CheckReport {
    let mut rec = Recorder::new("f-coefficient-identities").param("N", n_half);
    if let Err(e) = f_coefficients_into(&mut rec, n_half) {
        rec.error("setup", e);
    }
    rec.finish()
}

fn f_coefficients_into(rec: &mut Recorder, n_half: usize) -> Result<()> {
    let pv = ProofVectors::new(n_half);
    let arity = 2 * n_half + 1;
    let space = Space::new(n_half, arity);
    let hh = built(&hh_factors(n_half), n_half, arity)?;
    let c = built(&c_factors(n_half), n_half, arity)?;
    let d = built(&d_factors(n_half), n_half, arity)?;
    let s = pv.scalar();
    let js: Vec<i32> = crate::superlinalg::indices(n_half);
    let fcodes: Vec<(i32, u32)> = js
        .iter()
        .map(|&j| Ok((j, space.checked_encode(&pv.f_index(j))?)))
        .collect::<Result<_>>()?;

    for &(j, jc) in &fcodes {
        let fj = pv.f(j)?;
        let lhs = apply_product(&chain(&hh, &c), &fj)?;
        let base = apply_product(&refs(&hh), &fj)?;
        rec.check(!base.coeff(jc).is_zero(), || {
            format!("[f_{j}] HH f_{j} vanishes, identity would be vacuous")
        });
        for &(i, ic) in &fcodes {
            let (a, b) = (lhs.coeff(ic), &s * &base.coeff(ic));
            rec.check(a == b, || format!("left j={j}: [f_{i}] HH C f_{j} = {a}, expected {b}"));
        }
        let lhs = apply_product_right(&chain(&d, &hh), &fj)?;
        let base = apply_product_right(&refs(&hh), &fj)?;
        rec.check(!base.coeff(jc).is_zero(), || {
            format!("[f_{j}] f_{j} HH vanishes, identity would be vacuous")
        });
        for &(i, ic) in &fcodes {
            let (a, b) = (lhs.coeff(ic), &s * &base.coeff(ic));
            rec.check(a == b, || {
                format!("right i={j}: [f_{i}] f_{j} D HH = {a}, expected {b}")
            });
        }
    }

    let lift = |x: crate::superlinalg::GradedOperator<Scalar>| x.map_coeffs(|s| RatFunc::constant(s.clone()));
    let q_mid = lift(q_operator(n_half).embed(&[n_half, n_half + 1], arity)?);
    let q_out = lift(q_operator(n_half).embed(&[1, 2 * n_half], arity)?);
    let codes: Vec<u32> = space.basis().collect();
    let bad: Vec<String> = codes
        .par_iter()
        .filter_map(|&x| {
            let e = Vector::from_code(space, x);
            let left = q_mid.apply(&e).and_then(|y| apply_product(&refs(&hh), &y));
            let right = q_out.apply_right(&e).and_then(|y| apply_product_right(&refs(&hh), &y));
            match (left, right) {
                (Ok(l), Ok(r)) => fcodes.iter().find_map(|&(i, ic)| {
                    if !l.coeff(ic).is_zero() {
                        Some(format!("[f_{i}] HH Q(N,N+1) {:?} ≠ 0", space.decode(x)))
                    } else if !r.coeff(ic).is_zero() {
                        Some(format!("[f_{i}] {:?} Q(1,2N) HH ≠ 0", space.decode(x)))
                    } else {
                        None
                    }
                }),
                (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
            }
        })
        .collect();
    rec.check(bad.is_empty(), || bad.join("; "));
    Ok(())
}

/// Both exchange identities for `H(u)` and `H(1-N-u)` for every
/// `k = 1, …, N`; at `k = 1` they reduce through `a(u) + b(u) = 1`.
pub fn check_h_vector_exchange(n_half: usize) -> CheckReport {
    let mut rec = Recorder::new("h-vector-exchange").param("N", n_half);
    let pv = ProofVectors::new(n_half);
    let (a, b) = pv.ab();
    rec.check(&a + &b == RatFunc::one(), || "a(u) + b(u) ≠ 1".into());
    let n = n_half as i32;
    let sgn = |e: i32| RatFunc::int(if e.rem_euclid(2) == 0 { 1 } else { -1 });
    let res = (|| -> Result<()> {
        let hu = built(&h_factors(n_half, &affine(1, 0, 0, 0), 0), n_half, n_half)?;
        let hr = built(&h_factors(n_half, &reflected(n_half), 0), n_half, n_half)?;
        for k in 1..=n {
            let lhs = apply_product(&refs(&hu), &pv.combine(vec![(RatFunc::one(), pv.minus_k_first(k))])?)?;
            let y = pv.combine(vec![
                (&a * &sgn(n + k), ProofVectors::cat(&[&pv.d(k), &[-1]])),
                (-&(&b * &sgn(n)), ProofVectors::cat(&[&pv.d(1), &[-k]])),
            ])?;
            let rhs = apply_product(&refs(&hu), &y)?;
            rec.check_opt(format!("first statement, k={k}"), vector_diff(&lhs, &rhs)?);

            let lhs = apply_product(&refs(&hr), &pv.combine(vec![(RatFunc::one(), pv.minus_one_at(k))])?)?;
            let y = pv.combine(vec![
                (a.clone(), ProofVectors::cat(&[&[-k], &pv.d(1)])),
                (-&(&b * &sgn(k)), ProofVectors::cat(&[&[-1], &pv.d(k)])),
            ])?;
            let rhs = apply_product(&refs(&hr), &y)?;
            rec.check_opt(format!("second statement, k={k}"), vector_diff(&lhs, &rhs)?);
        }
        Ok(())
    })();
    if let Err(e) = res {
        rec.error("setup", e);
    }
    rec.finish()
}

/// `(H(u)⊗1)F(u,v)` on `e_1⊗…⊗e_N⊗e_{±1}` and `(H(u)⊗H(1-N-u)⊗1)C(u,v)` on
/// `f_{±1}`, each under the left and the right action.
pub fn check_fusion_actions(n_half: usize) -> CheckReport {
    let mut rec = Recorder::new("fusion-left-right-actions").param("N", n_half);
    if let Err(e) = actions_into(&mut rec, n_half) {
        rec.error("setup", e);
    }
    rec.finish()
}

fn actions_into(rec: &mut Recorder, n_half: usize) -> Result<()> {
    let pv = ProofVectors::new(n_half);
    let (z, s) = (pv.z(), pv.scalar());
    let zf = &(&z - &RatFunc::one()) / &z;

    // arity N+1: (H(u)⊗1) F(u,v)
    let small = n_half + 1;
    let slots: Vec<usize> = (1..=n_half).collect();
    let h = built(&h_factors(n_half, &affine(1, 0, 0, 0), 0), n_half, small)?;
    let f = built(
        &f_factors(&affine(1, 0, 0, 0), &affine(0, 1, 0, 0), &slots, small),
        n_half,
        small,
    )?;
    let hf = chain(&h, &f);
    let x_plus = pv.combine(vec![(RatFunc::one(), ProofVectors::cat(&[&pv.seq(), &[1]]))])?;
    let x_minus = pv.combine(vec![(RatFunc::one(), ProofVectors::cat(&[&pv.seq(), &[-1]]))])?;
    let y4 = x_plus.scale_by(&zf);
    let y5 = pv.combine(pv.minus_one_image(-1))?;
    let y7 = pv.combine(pv.minus_one_image(1))?;
    let hl = refs(&h);

    let d = vector_diff(&apply_product(&hf, &x_plus)?, &apply_product(&hl, &y4)?)?;
    rec.check_opt("(H⊗1)F on x₊, left action", d);
    let d = vector_diff(&apply_product(&hf, &x_minus)?, &apply_product(&hl, &y5)?)?;
    rec.check_opt("(H⊗1)F on x₋, left action", d);
    let d = vector_diff(&apply_product_right(&hf, &x_plus)?, &apply_product_right(&hl, &y4)?)?;
    rec.check_opt("(H⊗1)F on x₊, right action", d);
    let d = vector_diff(&apply_product_right(&hf, &x_minus)?, &apply_product_right(&hl, &y7)?)?;
    rec.check_opt("(H⊗1)F on x₋, right action", d);

    // arity 2N+1: (H(u)⊗H(1-N-u)⊗1) C(u,v)
    let big = 2 * n_half + 1;
    let hh = built(&hh_factors(n_half), n_half, big)?;
    let c = built(&c_factors(n_half), n_half, big)?;
    let hhc = chain(&hh, &c);
    let hhl = refs(&hh);
    let (f1, fm1) = (pv.f(1)?, pv.f(-1)?);
    let v5 = f1.scale_by(&s);
    let fivel = pv.combine(pv.fivel())?;
    let fiver = pv.combine(pv.fiver())?;

    let d = vector_diff(&apply_product(&hhc, &f1)?, &apply_product(&hhl, &v5)?)?;
    rec.check_opt("HH C on f₁, left action", d);
    let d = vector_diff(&apply_product(&hhc, &fm1)?, &apply_product(&hhl, &fivel)?)?;
    rec.check_opt("HH C on f₋₁, left action", d);
    let d = vector_diff(&apply_product_right(&hhc, &f1)?, &apply_product_right(&hhl, &v5)?)?;
    rec.check_opt("HH C on f₁, right action", d);
    let d = vector_diff(&apply_product_right(&hhc, &fm1)?, &apply_product_right(&hhl, &fiver)?)?;
    rec.check_opt("HH C on f₋₁, right action", d);
    Ok(())
}
