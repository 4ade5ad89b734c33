//! Evaluation modules `ρ_t : T(u) ↦ R(u,t)` of the extended Yangian, their
//! tensor products through the comultiplication, the image of `Z(u)`,
//! twisting down to `Y(p_N)` and the one-dimensional subquotient of
//! `(C^{N|N})^{⊗2N}`.

mod linear;
mod subquotient;
mod twist;

pub use linear::{dot, Subspace};
pub use subquotient::{check_subquotient, subquotient_chain, subquotient_scalar, Subquotient};
pub use twist::{check_twist_pair, check_twist_single, factoring_twist, inverse_sqrt, twist_to_y, z_scalar_series};

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::report::{CheckReport, Recorder};
use crate::rmatrix::operator_diff;
use crate::scalars::{int, sign, RatFunc, Scalar, TruncatedSeries, Var};
use crate::superlinalg::{indices, omega, p_operator, parity, q_operator, GradedOperator, Space};
use crate::yangian::{
    all_defects, delta, delta_generator, even_square, z_series, AlgebraElement, GenTriple, Word, ZForm,
};

pub type ScalarOp = GradedOperator<Scalar>;

/// A representation of the extended Yangian on `(C^{N|N})^{⊗m}`, stored as
/// the images of `T_ij^(r)` for `r ≤ order`.
#[derive(Clone, Debug)]
pub struct Rep {
    n_half: usize,
    order: usize,
    space: Space,
    /// evaluation points of the tensor factors, leftmost first
    points: Vec<Scalar>,
    /// twisting series applied on top of the product, if any
    twist: Option<TruncatedSeries<Scalar>>,
    /// `images[&(i,j)][r]`; entry 0 is `δ_ij`
    images: BTreeMap<(i32, i32), Vec<ScalarOp>>,
}

fn power(t: &Scalar, r: usize) -> Scalar {
    (0..r).fold(Scalar::one(), |acc, _| acc * t)
}

impl Rep {
    /// `ρ_t(T_ij^(r+1)) = (-E_ji + (-1)^r τπ(E_ji)) t^r (-1)^{j̄}`.
    pub fn evaluation(n_half: usize, t: &Scalar, order: usize) -> Result<Rep> {
        let space = Space::new(n_half, 1);
        let mut images = BTreeMap::new();
        for &i in &indices(n_half) {
            for &j in &indices(n_half) {
                let e = ScalarOp::matrix_unit(j, i, n_half)?;
                let tp = e.tau_pi_slot(1)?;
                let mut v = vec![unit_term(space, i, j)];
                for r in 0..order {
                    let x = e.neg().add(&tp.scale(&sign(r)))?;
                    v.push(x.scale(&(power(t, r) * sign(parity(j)))));
                }
                images.insert((i, j), v);
            }
        }
        Ok(Rep {
            n_half,
            order,
            space,
            points: vec![t.clone()],
            twist: None,
            images,
        })
    }

    /// `ρ_{t_1} ⊗ … ⊗ ρ_{t_m}`.
    pub fn chain(n_half: usize, points: &[Scalar], order: usize) -> Result<Rep> {
        let (first, rest) = points.split_first().ok_or(Error::ArityMismatch(0, 1))?;
        let mut rep = Rep::evaluation(n_half, first, order)?;
        for t in rest {
            rep = rep.tensor(&Rep::evaluation(n_half, t, order)?)?;
        }
        Ok(rep)
    }

    /// `(self ⊗ o)∘Δ`, evaluating `Δ(T_ij^(r))` leg by leg.
    pub fn tensor(&self, o: &Rep) -> Result<Rep> {
        if self.n_half != o.n_half {
            return Err(Error::DimensionMismatch(self.n_half, o.n_half));
        }
        if self.twist.is_some() || o.twist.is_some() {
            return Err(Error::NotReducible("tensor of twisted modules".into()));
        }
        let order = self.order.min(o.order);
        let space = Space::new(self.n_half, self.space.arity + o.space.arity);
        let keys: Vec<(i32, i32)> = self.images.keys().copied().collect();
        let built: Vec<((i32, i32), Result<Vec<ScalarOp>>)> = keys
            .par_iter()
            .map(|&(i, j)| {
                let res = (|| {
                    let mut v = vec![unit_term(space, i, j)];
                    for r in 1..=order {
                        let d = delta_generator(self.n_half, GenTriple::of_order(i, j, r as u32));
                        let mut acc = ScalarOp::zero(space);
                        for ((a, b), c) in d.terms() {
                            let x = self.word_image(a)?.tensor(&o.word_image(b)?)?;
                            acc = acc.add(&x.scale(c))?;
                        }
                        v.push(acc);
                    }
                    Ok(v)
                })();
                ((i, j), res)
            })
            .collect();
        let mut images = BTreeMap::new();
        for (k, v) in built {
            images.insert(k, v?);
        }
        let mut points = self.points.clone();
        points.extend(o.points.iter().cloned());
        Ok(Rep {
            n_half: self.n_half,
            order,
            space,
            points,
            twist: None,
            images,
        })
    }

    /// The composite with the automorphism `T_ij(u) ↦ c(u)T_ij(u)`.
    pub fn twisted(&self, c: &TruncatedSeries<Scalar>) -> Result<Rep> {
        if !c.coeff(0).is_one() {
            return Err(Error::NotInvertible);
        }
        let order = self.order.min(c.order());
        let mut images = BTreeMap::new();
        for (&k, v) in &self.images {
            let mut w = vec![v[0].clone()];
            for r in 1..=order {
                let mut acc = ScalarOp::zero(self.space);
                for p in 0..=r {
                    acc = acc.add(&v[r - p].scale(c.coeff(p)))?;
                }
                w.push(acc);
            }
            images.insert(k, w);
        }
        let total = match &self.twist {
            Some(old) => old.truncate(order).mul(&c.truncate(order)),
            None => c.truncate(order),
        };
        Ok(Rep {
            n_half: self.n_half,
            order,
            space: self.space,
            points: self.points.clone(),
            twist: Some(total),
            images,
        })
    }

    pub fn n_half(&self) -> usize {
        self.n_half
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn points(&self) -> &[Scalar] {
        &self.points
    }

    pub fn points_label(&self) -> Vec<String> {
        self.points.iter().map(|t| t.to_string()).collect()
    }

    pub fn generator(&self, g: GenTriple) -> Result<&ScalarOp> {
        let r = g.order() as usize;
        if r > self.order {
            return Err(Error::TruncationOverflow {
                order: r,
                budget: self.order,
            });
        }
        g.check_range(self.n_half)?;
        Ok(&self.images[&(g.i, g.j)][r])
    }

    /// The image of `T_ij^(r)` including `r = 0`.
    pub fn coefficient(&self, i: i32, j: i32, r: usize) -> Result<&ScalarOp> {
        if r == 0 {
            crate::superlinalg::check_index(i, self.n_half)?;
            crate::superlinalg::check_index(j, self.n_half)?;
            return Ok(&self.images[&(i, j)][0]);
        }
        self.generator(GenTriple::of_order(i, j, r as u32))
    }

    pub fn word_image(&self, w: &Word) -> Result<ScalarOp> {
        let mut acc = ScalarOp::identity(self.space);
        for g in w {
            acc = acc.compose(self.generator(*g)?)?;
        }
        Ok(acc)
    }

    pub fn image(&self, x: &AlgebraElement) -> Result<ScalarOp> {
        let mut acc = ScalarOp::zero(self.space);
        for (w, c) in x.terms() {
            acc = acc.add(&self.word_image(w)?.scale(c))?;
        }
        Ok(acc)
    }

    /// `ρ(Z(u))` coefficients through `order`.
    pub fn z_image(&self, order: usize, anchor: i32, form: ZForm) -> Result<Vec<ScalarOp>> {
        let z = z_series(self.n_half, order, anchor, form);
        z.coeffs().iter().map(|x| self.image(x)).collect()
    }

    /// The predicted scalar image of `Z(u)`: `Π_k (1 - 1/(u+t_k)²)`, times
    /// `c(u)c(-u)` when twisted.
    pub fn expected_z(&self, order: usize) -> Result<TruncatedSeries<Scalar>> {
        let mut acc = TruncatedSeries::one(order);
        for t in &self.points {
            acc = acc.mul(&z_factor(t, order)?);
        }
        if let Some(c) = &self.twist {
            acc = acc.mul(&even_square(&c.truncate(order)));
        }
        Ok(acc)
    }
}

fn unit_term(space: Space, i: i32, j: i32) -> ScalarOp {
    if i == j {
        ScalarOp::identity(space)
    } else {
        ScalarOp::zero(space)
    }
}

/// `1 - 1/(u+t)²` expanded at `u = ∞`.
pub fn z_factor(t: &Scalar, order: usize) -> Result<TruncatedSeries<Scalar>> {
    let ut = &RatFunc::var(Var::U) + &RatFunc::constant(t.clone());
    let f = &RatFunc::one() - &ut.pow(2).inv()?;
    Ok(TruncatedSeries::new(f.expand_at_infinity(Var::U, order)?, order))
}

/// `Some(c)` when `x = c·1`.
pub fn scalar_value(x: &ScalarOp) -> Option<Scalar> {
    let space = x.space();
    let c = x.entry_code(0, 0);
    (*x == ScalarOp::scalar(space, c.clone())).then_some(c)
}

fn op_series_mul(a: &[ScalarOp], b: &[ScalarOp]) -> Result<Vec<ScalarOp>> {
    let n = a.len().min(b.len());
    let space = a[0].space();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = ScalarOp::zero(space);
        for p in 0..=k {
            if a[p].is_zero() || b[k - p].is_zero() {
                continue;
            }
            acc = acc.add(&a[p].compose(&b[k - p])?)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// `R_{1,m}(u,t)` in arity `n` as a series: `R^(0) = 1`,
/// `R^(r+1) = -P t^r + Q (-t)^r`.
fn r_series(n_half: usize, arity: usize, slot: usize, t: &Scalar, order: usize) -> Result<Vec<ScalarOp>> {
    let pe = p_operator::<Scalar>(n_half).embed(&[1, slot], arity)?;
    let qe = q_operator::<Scalar>(n_half).embed(&[1, slot], arity)?;
    let mut out = vec![ScalarOp::identity(Space::new(n_half, arity))];
    for r in 0..order {
        let x = pe.scale(&-power(t, r)).add(&qe.scale(&power(&-t.clone(), r)))?;
        out.push(x);
    }
    Ok(out)
}

/// `Σ_ij E_ij ⊗ ρ(T_ij(u))` through the order of the module.
pub fn t_matrix_image(rep: &Rep) -> Result<Vec<ScalarOp>> {
    let n = rep.n_half;
    let space = Space::new(n, rep.space.arity + 1);
    let mut out = Vec::new();
    for r in 0..=rep.order {
        let mut acc = ScalarOp::zero(space);
        for &i in &indices(n) {
            for &j in &indices(n) {
                let img = rep.coefficient(i, j, r)?;
                if img.is_zero() {
                    continue;
                }
                acc = acc.add(&ScalarOp::matrix_unit(i, j, n)?.tensor(img)?)?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// `R_{12}(u,t_1) R_{13}(u,t_2) …` expanded in `u^{-1}`.
pub fn r_product_series(n_half: usize, points: &[Scalar], order: usize) -> Result<Vec<ScalarOp>> {
    let arity = points.len() + 1;
    let mut acc = r_series(n_half, arity, 2, &points[0], order)?;
    for (k, t) in points.iter().enumerate().skip(1) {
        acc = op_series_mul(&acc, &r_series(n_half, arity, k + 2, t, order)?)?;
    }
    Ok(acc)
}

fn ts_param(rep: &Rep) -> serde_json::Value {
    serde_json::Value::from(rep.points_label())
}

/// The module of `ρ_{t_1}⊗…⊗ρ_{t_m}` against the R-matrix product it should
/// reproduce; for a single point this is `ρ_t(T(u)) = R(u,t)`.
pub fn check_r_product(rep: &Rep) -> CheckReport {
    let mut rec = Recorder::new("rep-r-matrix-image")
        .param("N", rep.n_half)
        .param("t", ts_param(rep))
        .param("order", rep.order);
    let res = (|| {
        let lhs = t_matrix_image(rep)?;
        let rhs = r_product_series(rep.n_half, &rep.points, rep.order)?;
        for (r, (a, b)) in lhs.iter().zip(&rhs).enumerate() {
            if let Some(w) = operator_diff(a, b)? {
                return Ok(Some(format!("coefficient u^-{r}: {w}")));
            }
        }
        Ok(None)
    })();
    rec.check_result("Σ E_ij ⊗ ρ(T_ij(u)) = Π R_{1k}(u, t_k)", res);
    rec.finish()
}

/// `ρ_t(T_ij^(r+1))` agrees with the evaluation `e_ij u^r ↦ E_ij t^r` of
/// `-g_ji^(r)(-1)^{j̄}`, where `g_ji^(r) = e_ji u^r + ω(e_ji)(-u)^r`.
pub fn check_eval_current(n_half: usize, t: &Scalar, max_r: usize) -> CheckReport {
    let mut rec = Recorder::new("rep-eval-current-algebra")
        .param("N", n_half)
        .param("t", t.to_string())
        .param("order", max_r + 1);
    let rep = match Rep::evaluation(n_half, t, max_r + 1) {
        Ok(r) => r,
        Err(e) => {
            rec.error("ρ_t", e);
            return rec.finish();
        }
    };
    for &i in &indices(n_half) {
        for &j in &indices(n_half) {
            for r in 0..=max_r {
                let res = (|| {
                    let e = ScalarOp::matrix_unit(j, i, n_half)?;
                    let g = e.scale(&power(t, r)).add(&omega(&e)?.scale(&power(&-t.clone(), r)))?;
                    let want = g.scale(&-sign(parity(j)));
                    let got = rep.generator(GenTriple::new(i, j, r as u32))?;
                    operator_diff(got, &want)
                })();
                rec.check_result(format!("T[{i},{j},{}]", r + 1), res);
            }
        }
    }
    rec.finish()
}

/// Every RTT defect with orders up to `max_order` maps to zero.
pub fn check_rep_defects(rep: &Rep, max_order: usize) -> CheckReport {
    let mut rec = Recorder::new("rep-defects")
        .param("N", rep.n_half)
        .param("t", ts_param(rep))
        .param("order", max_order);
    let defects = all_defects(rep.n_half, max_order);
    let results: Vec<(String, Result<Option<String>>)> = defects
        .par_iter()
        .map(|((i, j, k, l, a, b), d)| {
            let label = format!("[T[{i},{j},{a}], T[{k},{l},{b}]]");
            let res = rep.image(d).map(|x| {
                (!x.is_zero()).then(|| {
                    let (r, c, v) = x.entries().next().expect("nonzero");
                    let sp = x.space();
                    format!("entry {:?} <- {:?} = {v}", sp.decode(r), sp.decode(c))
                })
            });
            (label, res)
        })
        .collect();
    for (label, res) in results {
        rec.check_result(label, res);
    }
    rec.finish()
}

/// `ρ(Z(u))` is the predicted scalar series for every anchor and both
/// explicit formulas.
pub fn check_z_image(rep: &Rep, order: usize) -> CheckReport {
    let mut rec = Recorder::new("rep-z-image")
        .param("N", rep.n_half)
        .param("t", ts_param(rep))
        .param("order", order);
    let want = match rep.expected_z(order) {
        Ok(w) => w,
        Err(e) => {
            rec.error("expected series", e);
            return rec.finish();
        }
    };
    for &anchor in &indices(rep.n_half) {
        for form in [ZForm::LeftAnchored, ZForm::RightAnchored] {
            let res = rep.z_image(order, anchor, form).map(|img| {
                img.iter().enumerate().find_map(|(r, x)| {
                    let w = ScalarOp::scalar(rep.space, want.coeff(r).clone());
                    (x != &w).then(|| match scalar_value(x) {
                        Some(c) => format!("u^-{r}: got {c}, want {}", want.coeff(r)),
                        None => format!("u^-{r}: image is not scalar"),
                    })
                })
            });
            rec.check_result(format!("anchor {anchor} {form:?}"), res);
        }
    }
    rec.finish()
}

/// `(ρ_s ⊗ ρ_t)(Δ Z(u)) = ρ_s(Z(u)) ⊗ ρ_t(Z(u))`, evaluating `Δ` leg by
/// leg, and agreement with the tensor module built directly.
pub fn check_z_coproduct(n_half: usize, s: &Scalar, t: &Scalar, order: usize) -> CheckReport {
    let mut rec = Recorder::new("rep-z-coproduct")
        .param("N", n_half)
        .param("t", vec![s.to_string(), t.to_string()])
        .param("order", order);
    let res = (|| {
        let a = Rep::evaluation(n_half, s, order)?;
        let b = Rep::evaluation(n_half, t, order)?;
        let ab = a.tensor(&b)?;
        let z = z_series(n_half, order, 1, ZForm::LeftAnchored);
        let za: Vec<ScalarOp> = z.coeffs().iter().map(|x| a.image(x)).collect::<Result<_>>()?;
        let zb: Vec<ScalarOp> = z.coeffs().iter().map(|x| b.image(x)).collect::<Result<_>>()?;
        let mut out = Vec::new();
        for r in 0..=order {
            let mut legwise = ScalarOp::zero(ab.space);
            for ((x, y), c) in delta(n_half, z.coeff(r)).terms() {
                legwise = legwise.add(&a.word_image(x)?.tensor(&b.word_image(y)?)?.scale(c))?;
            }
            let mut product = ScalarOp::zero(ab.space);
            for p in 0..=r {
                product = product.add(&za[p].tensor(&zb[r - p])?)?;
            }
            let direct = ab.image(z.coeff(r))?;
            out.push((r, operator_diff(&legwise, &product)?, operator_diff(&direct, &product)?));
        }
        Ok(out)
    })();
    match res {
        Ok(v) => {
            for (r, w1, w2) in v {
                rec.check_opt(format!("u^-{r}: (ρ⊗ρ)Δ(Z) = ρ(Z)⊗ρ(Z)"), w1);
                rec.check_opt(format!("u^-{r}: tensor module image of Z"), w2);
            }
        }
        Err(e) => rec.error("coproduct of Z", e),
    }
    rec.finish()
}

/// Standard evaluation points used by the representation checks.
pub fn standard_points() -> Vec<Scalar> {
    vec![int(0), int(1), int(-2), crate::scalars::frac(1, 2)]
}

/// All representation checks at half-dimension `N`: the module property,
/// the `Z(u)` image and the R-matrix form for each point, plus two tensor
/// products.
pub fn check_rtt_rep(n_half: usize, points: &[Scalar], defect_order: usize, z_order: usize) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let order = (2 * defect_order).max(z_order);
    for t in points {
        let rep = match Rep::evaluation(n_half, t, order) {
            Ok(r) => r,
            Err(e) => {
                let mut rec = Recorder::new("rep-defects")
                    .param("N", n_half)
                    .param("t", t.to_string());
                rec.error("ρ_t", e);
                out.push(rec.finish());
                continue;
            }
        };
        out.push(check_rep_defects(&rep, defect_order));
        out.push(check_z_image(&rep, z_order));
        out.push(check_r_product(&rep));
        out.push(check_eval_current(n_half, t, 2));
    }
    for t in points.iter().filter(|t| !t.is_zero()).take(2) {
        let pair = Rep::chain(n_half, &[t.clone(), -t.clone()], order);
        match pair {
            Ok(rep) => {
                out.push(check_rep_defects(&rep, defect_order.min(2)));
                out.push(check_z_image(&rep, z_order));
                out.push(check_r_product(&rep));
            }
            Err(e) => {
                let mut rec = Recorder::new("rep-defects").param("N", n_half);
                rec.error("tensor module", e);
                out.push(rec.finish());
            }
        }
        out.push(check_z_coproduct(n_half, t, &(t + int(1)), z_order.min(4)));
    }
    out
}
