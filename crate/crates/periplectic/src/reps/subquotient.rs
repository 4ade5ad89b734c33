use num_traits::Zero;

use super::linear::{dot, from_vector, matrix_rows, pull_back, SparseVec, Subspace};
use super::twist::twist_to_y;
use super::{check_r_product, Rep, ScalarOp};
use crate::error::{Error, Result};
use crate::report::{CheckReport, Recorder};
use crate::rmatrix::fused_h;
use crate::scalars::{int, is_integer, sign, RatFunc, Scalar, TruncatedSeries, Var};
use crate::superlinalg::{indices, q_operator, Code, Space, SuperVector};
use crate::yangian::GenTriple;

/// Evaluation points `1-N-t, …, -t, t, …, t+N-1`.
pub fn subquotient_chain(n_half: usize, t: &Scalar) -> Vec<Scalar> {
    let n = n_half as i64;
    let mut pts: Vec<Scalar> = (0..n).map(|k| int(1 - n + k) - t).collect();
    pts.extend((0..n).map(|k| t + int(k)));
    pts
}

/// Coefficients of `(t-v-1)(t+v+N) / ((t-v)(t+v+N-1))` in `v^{-1}`.
pub fn subquotient_scalar(n_half: usize, t: &Scalar, order: usize) -> Result<TruncatedSeries<Scalar>> {
    let v = RatFunc::var(Var::V);
    let c = |x: Scalar| RatFunc::constant(x);
    let n = int(n_half as i64);
    let num = &(&c(t - int(1)) - &v) * &(&c(t + &n) + &v);
    let den = &(&c(t.clone()) - &v) * &(&c(t + &n - int(1)) + &v);
    let f = num.checked_div(&den)?;
    Ok(TruncatedSeries::new(f.expand_at_infinity(Var::V, order)?, order))
}

/// The module `ρ_{1-N-t} ⊗ … ⊗ ρ_{t+N-1}` on `V = (C^{N|N})^{⊗2N}` with the
/// subspace `U = ker W + im Q_{N,N+1}`, `W = H(t) ⊗ H(1-N-t)`, described by
/// the functionals vanishing on it.
pub struct Subquotient {
    pub n_half: usize,
    pub t: Scalar,
    pub rep: Rep,
    /// row space of `W`; `ker W` is its annihilator
    pub w_rows: Subspace,
    pub image_q: Subspace,
    /// functionals vanishing exactly on `U`
    pub u_perp: Subspace,
    /// `e_1⊗…⊗e_N⊗e_1⊗…⊗e_N`
    pub vector: SparseVec,
}

fn excluded(n_half: usize, t: &Scalar) -> bool {
    let m = -(t * int(2));
    n_half > 1 && is_integer(&m) && m >= int(1) && m <= int(2 * n_half as i64 - 3)
}

fn to_scalar_op(x: &crate::rmatrix::Op) -> Result<ScalarOp> {
    x.try_map_coeffs(|c| c.constant_value().ok_or_else(|| Error::NotExpandable(c.to_string())))
}

fn apply(x: &ScalarOp, v: &SparseVec) -> Result<SparseVec> {
    let sv = SuperVector::from_terms(x.space(), v.iter().map(|(k, c)| (*k as Code, c.clone())));
    Ok(from_vector(&x.apply(&sv)?))
}

impl Subquotient {
    pub fn new(n_half: usize, t: &Scalar, order: usize) -> Result<Self> {
        if excluded(n_half, t) {
            return Err(Error::PoleInH((-(t * int(2))).to_string()));
        }
        let n = n_half;
        let h1 = fused_h(n, n, &RatFunc::constant(t.clone()))?;
        let h2 = fused_h(n, n, &RatFunc::constant(int(1 - n as i64) - t))?;
        let w = to_scalar_op(&h1)?.tensor(&to_scalar_op(&h2)?)?;
        let space = Space::new(n, 2 * n);
        let dim = space.dim();
        let w_rows = Subspace::spanned_by(dim, matrix_rows(&w));
        let q = q_operator::<Scalar>(n).embed(&[n, n + 1], 2 * n)?;
        let image_q = Subspace::spanned_by(dim, super::linear::matrix_columns(&q));
        // U⊥ = (row space of W) ∩ (im Q)⊥: combinations Σ α_a w_a killing im Q
        let w_basis: Vec<&SparseVec> = w_rows.basis().collect();
        let constraints = image_q.basis().map(|qb| {
            w_basis
                .iter()
                .enumerate()
                .map(|(a, wa)| (a, dot(wa, qb)))
                .filter(|(_, x)| !x.is_zero())
                .collect::<SparseVec>()
        });
        let alphas = Subspace::spanned_by(w_basis.len(), constraints).annihilator();
        let mut u_perp = Subspace::new(dim);
        for alpha in alphas.basis() {
            let mut phi = SparseVec::new();
            for (a, c) in alpha {
                for (k, x) in w_basis[*a] {
                    let e = phi.entry(*k).or_insert_with(Scalar::zero);
                    *e += c * x;
                }
            }
            phi.retain(|_, x| !x.is_zero());
            u_perp.insert(phi);
        }
        let idx: Vec<i32> = (1..=n as i32).chain(1..=n as i32).collect();
        let vector = SparseVec::from([(space.encode(&idx) as usize, int(1))]);
        let rep = Rep::chain(n, &subquotient_chain(n, t), order)?;
        Ok(Subquotient {
            n_half,
            t: t.clone(),
            rep,
            w_rows,
            image_q,
            u_perp,
            vector,
        })
    }

    /// `dim V/U`.
    pub fn quotient_dim(&self) -> usize {
        self.u_perp.rank()
    }

    pub fn in_u(&self, v: &SparseVec) -> bool {
        self.u_perp.basis().all(|phi| dot(phi, v).is_zero())
    }

    /// `Some(witness)` when `X` fails to preserve `ker W`, `im Q` or `U`.
    pub fn preserves(&self, x: &ScalarOp) -> Result<Option<String>> {
        for row in self.w_rows.basis() {
            if !self.w_rows.contains(&pull_back(row, x)) {
                return Ok(Some("ker W is not preserved".into()));
            }
        }
        for q in self.image_q.basis() {
            if !self.image_q.contains(&apply(x, q)?) {
                return Ok(Some("im Q is not preserved".into()));
            }
        }
        for phi in self.u_perp.basis() {
            if !self.u_perp.contains(&pull_back(phi, x)) {
                return Ok(Some("ker W + im Q is not preserved".into()));
            }
        }
        Ok(None)
    }

    /// The scalar by which `X` acts on the line spanned by the vector modulo
    /// `U`, or `None` if it does not act by a scalar.
    pub fn line_scalar(&self, x: &ScalarOp) -> Result<Option<Scalar>> {
        let xe = apply(x, &self.vector)?;
        let mut lambda: Option<Scalar> = None;
        for phi in self.u_perp.basis() {
            let (a, b) = (dot(phi, &xe), dot(phi, &self.vector));
            if b.is_zero() {
                if !a.is_zero() {
                    return Ok(None);
                }
                continue;
            }
            let l = a / b;
            match &lambda {
                Some(m) if *m != l => return Ok(None),
                _ => lambda = Some(l),
            }
        }
        Ok(lambda)
    }
}

/// The one-dimensional subquotient: `U` is invariant, the vector spans a
/// line modulo `U`, `T_ij(-v)` acts there by `δ_ij` times the predicted
/// scalar through `v^{-order}`, and twisting by `c(u) = 1/f(-u)` sends `Z(u)`
/// to 1.
pub fn check_subquotient(n_half: usize, t: &Scalar, order: usize) -> CheckReport {
    let mut rec = Recorder::new("subquotient")
        .param("N", n_half)
        .param("t", t.to_string())
        .param("order", order);
    let sq = match Subquotient::new(n_half, t, order) {
        Ok(s) => s,
        Err(e) => {
            rec.error("construction", e);
            return rec.finish();
        }
    };
    let f = match subquotient_scalar(n_half, t, order) {
        Ok(f) => f,
        Err(e) => {
            rec.error("scalar", e);
            return rec.finish();
        }
    };
    rec = rec.param("quotient_dim", sq.quotient_dim());
    rec.check(!sq.in_u(&sq.vector), || "the vector lies in ker W + im Q".into());
    for &i in &indices(n_half) {
        for &j in &indices(n_half) {
            for r in 1..=order {
                let label = format!("T[{i},{j},{r}]");
                let res = (|| {
                    let x = sq.rep.generator(GenTriple::of_order(i, j, r as u32))?;
                    if let Some(w) = sq.preserves(x)? {
                        return Ok(Some(w));
                    }
                    // T_ij(-v) = Σ_r (-1)^r T_ij^(r) v^{-r}
                    let want = if i == j { sign(r) * f.coeff(r) } else { Scalar::zero() };
                    Ok(match sq.line_scalar(x)? {
                        Some(l) if l == want => None,
                        Some(l) => Some(format!("acts by {l}, want {want}")),
                        None => Some("does not act by a scalar on the line".into()),
                    })
                })();
                rec.check_result(label, res);
            }
        }
    }
    let twist = (|| {
        let c = f.negate_variable().invert()?;
        Ok(twist_to_y(&sq.rep, &c).err().map(|e| e.to_string()))
    })();
    rec.check_result("twist by 1/f(-u) sends Z(u) to 1", twist);
    if n_half == 1 {
        let r = check_r_product(&sq.rep);
        rec.check(r.passed(), || {
            format!("module differs from R-matrix product: {:?}", r.witnesses)
        });
    }
    rec.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::frac;

    #[test]
    fn chain_points() {
        let p = subquotient_chain(2, &int(1));
        assert_eq!(p, vec![int(-2), int(-1), int(1), int(2)]);
    }

    #[test]
    fn scalar_at_n1_t3() {
        // (2-v)(4+v)/((3-v)(3+v)) = 1 + (2v+1)/(v²-9)
        let f = subquotient_scalar(1, &int(3), 2).unwrap();
        assert_eq!(f.coeffs(), &[int(1), int(2), int(1)]);
    }

    #[test]
    fn excluded_points() {
        assert!(excluded(2, &frac(-1, 2)));
        assert!(!excluded(2, &int(1)));
        assert!(!excluded(1, &frac(-1, 2)));
        assert!(matches!(Subquotient::new(2, &frac(-1, 2), 2), Err(Error::PoleInH(_))));
    }

    #[test]
    fn subquotient_n1() {
        for t in [int(3), int(0), frac(-1, 2)] {
            let r = check_subquotient(1, &t, 4);
            assert!(r.passed(), "t = {t}: {:?}", r.witnesses);
        }
    }

    #[test]
    fn wrong_scalar_is_detected() {
        let sq = Subquotient::new(1, &int(3), 2).unwrap();
        let x = sq.rep.generator(GenTriple::of_order(1, 1, 1)).unwrap();
        let l = sq.line_scalar(x).unwrap().unwrap();
        assert_ne!(l, int(2));
        assert_eq!(l, int(-2));
    }
}
