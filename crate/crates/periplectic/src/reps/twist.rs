use num_traits::{One, Zero};

use super::{scalar_value, Rep};
use crate::error::{Error, Result};
use crate::report::{CheckReport, Recorder};
use crate::scalars::{int, RatFunc, Scalar, TruncatedSeries, Var};
use crate::yangian::ZForm;

fn show_series(s: &TruncatedSeries<Scalar>) -> String {
    let parts: Vec<String> = s
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| if k == 0 { c.to_string() } else { format!("({c})u^-{k}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// `ρ(Z(u))` as a scalar series through `order`.
pub fn z_scalar_series(rep: &Rep, order: usize) -> Result<TruncatedSeries<Scalar>> {
    let img = rep.z_image(order, 1, ZForm::LeftAnchored)?;
    let coeffs = img
        .iter()
        .enumerate()
        .map(|(r, x)| scalar_value(x).ok_or_else(|| Error::DoesNotFactor(format!("Z^({r}) has a non-scalar image"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries::new(coeffs, order))
}

/// `s^{-1/2}` for a series with leading coefficient 1.
pub fn inverse_sqrt(s: &TruncatedSeries<Scalar>) -> Result<TruncatedSeries<Scalar>> {
    if !s.coeff(0).is_one() {
        return Err(Error::NotInvertible);
    }
    let n = s.order();
    let mut y = vec![Scalar::one()];
    let half = Scalar::new(1.into(), 2.into());
    for k in 1..=n {
        let mut acc = s.coeff(k).clone();
        for m in 1..k {
            acc -= &y[m] * &y[k - m];
        }
        y.push(acc * &half);
    }
    TruncatedSeries::new(y, n).invert()
}

/// Twists `rep` by `c(u)` and checks that `Z(u)` then acts as 1, so the
/// twisted module factors through `Y(p_N)`.
pub fn twist_to_y(rep: &Rep, c: &TruncatedSeries<Scalar>) -> Result<Rep> {
    let tw = rep.twisted(c)?;
    let order = tw.order();
    let img = tw.z_image(order, 1, ZForm::LeftAnchored)?;
    for (r, x) in img.iter().enumerate().skip(1) {
        if !x.is_zero() {
            let what = match scalar_value(x) {
                Some(v) => v.to_string(),
                None => "a non-scalar operator".into(),
            };
            return Err(Error::DoesNotFactor(format!(
                "after twisting by c(u) = {}, Z^({r}) acts as {what}",
                show_series(c)
            )));
        }
    }
    Ok(tw)
}

/// Finds a twist `c(u)` making `rep` factor through `Y(p_N)`. Since
/// `c(u)c(-u)` is even, one exists exactly when `ρ(Z(u))` is an even series;
/// then `c = ρ(Z)^{-1/2}` works. Otherwise the first odd coefficient is the
/// witness.
pub fn factoring_twist(rep: &Rep, order: usize) -> Result<TruncatedSeries<Scalar>> {
    let z = z_scalar_series(rep, order)?;
    if let Some((k, v)) = z.coeffs().iter().enumerate().find(|(k, v)| k % 2 == 1 && !v.is_zero()) {
        return Err(Error::DoesNotFactor(format!(
            "Z(u) ↦ {}: the u^-{k} coefficient {v} is odd, but c(u)c(-u) is even",
            show_series(&z)
        )));
    }
    let c = inverse_sqrt(&z)?;
    twist_to_y(rep, &c)?;
    Ok(c)
}

fn expand(f: &RatFunc, order: usize) -> Result<TruncatedSeries<Scalar>> {
    Ok(TruncatedSeries::new(f.expand_at_infinity(Var::U, order)?, order))
}

fn u_plus(c: &Scalar) -> RatFunc {
    &RatFunc::var(Var::U) + &RatFunc::constant(c.clone())
}

/// A single evaluation module can be twisted to factor through `Y(p_N)`
/// exactly when `t = 0`; at `t = 0` the twist `c(u) = u/(u+1)` does it.
pub fn check_twist_single(n_half: usize, points: &[Scalar], order: usize) -> CheckReport {
    let mut rec = Recorder::new("twist-single-module")
        .param("N", n_half)
        .param("t", points.iter().map(|t| t.to_string()).collect::<Vec<_>>())
        .param("order", order);
    let displayed_c = (|| expand(&RatFunc::var(Var::U).checked_div(&u_plus(&int(1)))?, order))();
    for t in points {
        let rep = match Rep::evaluation(n_half, t, order) {
            Ok(r) => r,
            Err(e) => {
                rec.error(format!("t = {t}"), e);
                continue;
            }
        };
        let found = factoring_twist(&rep, order);
        let expect = t.is_zero();
        rec.check(found.is_ok() == expect, || match &found {
            Ok(c) => format!("t = {t}: unexpectedly factors with c(u) = {}", show_series(c)),
            Err(e) => format!("t = {t}: {e}"),
        });
        if let Ok(c) = &displayed_c {
            let r = twist_to_y(&rep, c);
            rec.check(r.is_ok() == expect, || match &r {
                Ok(_) => format!("t = {t}: c(u) = u/(u+1) unexpectedly works"),
                Err(e) => format!("t = {t}: c(u) = u/(u+1): {e}"),
            });
        }
    }
    if let Err(e) = displayed_c {
        rec.error("c(u) = u/(u+1)", e);
    }
    rec.finish()
}

/// `ρ_t ⊗ ρ_{-t}` twisted by `c(u) = (u+t)²/((u+t)²-1)` factors through
/// `Y(p_N)`.
pub fn check_twist_pair(n_half: usize, t: &Scalar, order: usize) -> CheckReport {
    let mut rec = Recorder::new("twist-pair-module")
        .param("N", n_half)
        .param("t", t.to_string())
        .param("order", order);
    let res = (|| {
        let rep = Rep::chain(n_half, &[t.clone(), -t.clone()], order)?;
        let sq = u_plus(t).pow(2);
        let c = expand(&sq.checked_div(&(&sq - &RatFunc::one()))?, order)?;
        Ok((twist_to_y(&rep, &c).err(), factoring_twist(&rep, order).err()))
    })();
    match res {
        Ok((a, b)) => {
            rec.check_opt("c(u) = (u+t)²/((u+t)²-1)", a.map(|e| e.to_string()));
            rec.check_opt("even twist ρ(Z)^{-1/2}", b.map(|e| e.to_string()));
        }
        Err(e) => rec.error("ρ_t ⊗ ρ_-t", e),
    }
    rec.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::frac;

    #[test]
    fn inverse_sqrt_squares_back() {
        let s = TruncatedSeries::new(vec![int(1), int(0), int(-1), int(4), frac(1, 3)], 4);
        let y = inverse_sqrt(&s).unwrap();
        assert_eq!(y.mul(&y).mul(&s), TruncatedSeries::one(4));
    }

    #[test]
    fn only_t_zero_factors() {
        let pts = [int(0), int(1), int(-1), int(2), int(-2), frac(1, 2)];
        let r = check_twist_single(1, &pts, 4);
        assert!(r.passed(), "{:?}", r.witnesses);
        let rep = Rep::evaluation(1, &int(1), 4).unwrap();
        let e = factoring_twist(&rep, 4).unwrap_err();
        assert!(e.to_string().contains("u^-3"), "{e}");
    }

    #[test]
    fn pair_factors() {
        let r = check_twist_pair(1, &int(2), 4);
        assert!(r.passed(), "{:?}", r.witnesses);
    }
}
