use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::order::{all_triples, is_admissible, is_misordered};
use super::system::{Perturbation, ReductionSystem, Strategy};
use crate::error::Result;
use crate::report::{CheckReport, Recorder};
use crate::scalars::{sign, Scalar};
use crate::superlinalg::{indices, parity};
use crate::yangian::{
    delta, m_map, rtt_rhs, show_word, z_series, AlgebraElement, Antipode, GenTriple, TensorElement, Word, ZForm,
};

fn word(w: Word) -> AlgebraElement {
    AlgebraElement::monomial(w, Scalar::one())
}

fn random_word(rng: &mut ChaCha8Rng, n_half: usize, max_len: usize, max_order: u32) -> Word {
    let idx = indices(n_half);
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| {
            let i = idx[rng.gen_range(0..idx.len())];
            let j = idx[rng.gen_range(0..idx.len())];
            GenTriple::of_order(i, j, rng.gen_range(1..=max_order))
        })
        .collect()
}

fn total_order(w: &[GenTriple]) -> u32 {
    w.iter().map(GenTriple::order).sum()
}

/// Seeded random words reduced under the leftmost and the rightmost
/// strategy; the two normal forms must coincide.
pub fn check_confluence(n_half: usize, words: usize, max_len: usize, max_order: u32, seed: u64) -> CheckReport {
    let mut rec = Recorder::new("pbw-confluence")
        .param("N", n_half)
        .param("words", words)
        .param("max_length", max_len)
        .param("max_order", max_order)
        .param("seed", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample: Vec<Word> = (0..words)
        .map(|_| random_word(&mut rng, n_half, max_len, max_order))
        .collect();
    let cap = sample.iter().map(|w| total_order(w)).max().unwrap_or(1);
    let sys = ReductionSystem::new(n_half, cap);
    let outcomes: Vec<(Word, Result<Option<String>>)> = sample
        .into_par_iter()
        .map(|w| {
            let x = word(w.clone());
            let res = (|| {
                let a = sys.normal_form_with(&x, Strategy::Leftmost)?;
                let b = sys.normal_form_with(&x, Strategy::Rightmost)?;
                Ok((a != b).then(|| format!("leftmost {a}, rightmost {b}")))
            })();
            (w, res)
        })
        .collect();
    for (w, res) in outcomes {
        rec.check_result(show_word(&w), res);
    }
    rec.finish()
}

/// The words carrying an ambiguity: misordered pairs with a letter outside
/// `J` (inclusion) and triples whose two adjacent pairs are both misordered
/// (overlap), over all triples of order `≤ max_order`.
pub fn ambiguous_words(n_half: usize, max_order: u32) -> (Vec<Word>, Vec<Word>) {
    let ts = all_triples(n_half, max_order);
    let mut inclusion = Vec::new();
    let mut overlap = Vec::new();
    for a in &ts {
        for b in &ts {
            if !is_misordered(a, b) {
                continue;
            }
            if !is_admissible(a) || !is_admissible(b) {
                inclusion.push(vec![*a, *b]);
            }
            for c in &ts {
                if is_misordered(b, c) {
                    overlap.push(vec![*a, *b, *c]);
                }
            }
        }
    }
    (inclusion, overlap)
}

fn resolve(sys: &ReductionSystem, w: &[GenTriple]) -> Result<Option<String>> {
    let redexes = sys.redexes(w);
    let mut first: Option<(super::system::Redex, AlgebraElement)> = None;
    for r in redexes {
        let nf = sys.reduce_at(w, r)?;
        match &first {
            None => first = Some((r, nf)),
            Some((r0, x)) if *x != nf => {
                return Ok(Some(format!("via {r0:?}: {x}; via {r:?}: {nf}")));
            }
            _ => {}
        }
    }
    Ok(None)
}

/// Every inclusion and overlap ambiguity within the order budget reduces
/// to one normal form whichever rule is applied first.
pub fn check_ambiguities(n_half: usize, max_order: u32) -> CheckReport {
    check_ambiguities_in(
        &ReductionSystem::new(n_half, 3 * max_order),
        max_order,
        "pbw-ambiguities",
    )
}

/// The same check for a given system; a perturbed system should fail it.
pub fn check_ambiguities_in(sys: &ReductionSystem, max_order: u32, name: &str) -> CheckReport {
    let (inclusion, overlap) = ambiguous_words(sys.n_half(), max_order);
    let mut rec = Recorder::new(name)
        .param("N", sys.n_half())
        .param("max_order", max_order)
        .param("inclusion", inclusion.len())
        .param("overlap", overlap.len());
    if let Some(p) = sys.perturbation() {
        rec = rec.param(
            "dropped",
            format!("{} from the rule for {} {}", show_word(&p.dropped), p.pair.0, p.pair.1),
        );
    }
    let outcomes: Vec<(String, Result<Option<String>>)> = inclusion
        .par_iter()
        .map(|w| (format!("inclusion {}", show_word(w)), resolve(sys, w)))
        .chain(
            overlap
                .par_iter()
                .map(|w| (format!("overlap {}", show_word(w)), resolve(sys, w))),
        )
        .collect();
    for (label, res) in outcomes {
        rec.check_result(label, res);
    }
    rec.finish()
}

/// A reordering rule with one `D`-word removed: the first misordered pair
/// of triples of order `≤ 2` whose `D` has a word with no letter that `red1`
/// sends to 0, losing that word. Dropping a word that vanishes anyway would
/// not change the system.
pub fn default_perturbation(n_half: usize) -> Perturbation {
    let sys = ReductionSystem::new(n_half, 4);
    let survives = |w: &Word| {
        w.iter()
            .all(|g| is_admissible(g) || sys.red1_rhs(*g).map(|x| !x.is_zero()).unwrap_or(false))
    };
    let ts = all_triples(n_half, 2);
    for a in &ts {
        for b in &ts {
            if !is_misordered(a, b) {
                continue;
            }
            let d = rtt_rhs(n_half, a.i, a.j, b.i, b.j, a.order() as usize, b.order() as usize);
            let found = d.terms().find(|(w, _)| survives(w)).map(|(w, _)| w.clone());
            if let Some(w) = found {
                return Perturbation {
                    pair: (*a, *b),
                    dropped: w,
                };
            }
        }
    }
    unreachable!("some reordering rule has a surviving D-word")
}

/// Every word of the `D`-part of a reordering rule for `(r, s)` has degree
/// at most `r+s-1`, except single generators, which have degree `r+s`; the
/// products in a replacement of a letter of degree `r` have degree below `r`.
pub fn check_rule_degrees(n_half: usize, max_order: u32) -> CheckReport {
    let mut rec = Recorder::new("pbw-rule-degrees")
        .param("N", n_half)
        .param("max_order", max_order);
    let sys = ReductionSystem::new(n_half, 2 * max_order);
    let ts = all_triples(n_half, max_order);
    for a in &ts {
        for b in &ts {
            if !is_misordered(a, b) {
                continue;
            }
            let res = sys.d_part(*a, *b).map(|d| {
                let top = a.r + b.r;
                d.terms()
                    .find(|(w, _)| {
                        let deg: u32 = w.iter().map(|g| g.r).sum();
                        if w.len() == 1 {
                            deg != top
                        } else {
                            deg + 1 > top
                        }
                    })
                    .map(|(w, _)| format!("D-word {} has the wrong degree", show_word(w)))
            });
            rec.check_result(format!("{a} {b}"), res);
        }
        if !is_admissible(a) {
            let res = sys.red1_rhs(*a).map(|c| {
                c.terms()
                    .find(|(w, _)| w.len() > 1 && w.iter().map(|g| g.r).sum::<u32>() >= a.r)
                    .map(|(w, _)| format!("product {} is not of lower degree", show_word(w)))
            });
            rec.check_result(a.to_string(), res);
        }
    }
    rec.finish()
}

/// `[x, y] = -(-1)^{|x||y|}[y, x]`: both reordering rules for a pair define
/// the same relation in `Y(p_N)`.
pub fn check_swap_consistency(n_half: usize, max_order: u32) -> CheckReport {
    let mut rec = Recorder::new("pbw-swap-consistency")
        .param("N", n_half)
        .param("max_order", max_order);
    let sys = ReductionSystem::new(n_half, 2 * max_order);
    let ts = all_triples(n_half, max_order);
    for a in &ts {
        for b in &ts {
            let x = rtt_rhs(n_half, a.i, a.j, b.i, b.j, a.order() as usize, b.order() as usize);
            let y = rtt_rhs(n_half, b.i, b.j, a.i, a.j, b.order() as usize, a.order() as usize);
            let mut sum = x;
            sum.add_scaled(&y, &sign(a.parity() * b.parity()));
            let res = sys.normal_form(&sum).map(|nf| (!nf.is_zero()).then(|| nf.to_string()));
            rec.check_result(format!("[{a}, {b}] + [{b}, {a}]"), res);
        }
    }
    rec.finish()
}

/// Every coefficient of `Z(u) - 1`, for both formulas and every anchor,
/// has normal form 0; so does the difference between any two of them.
pub fn check_z_is_one(n_half: usize, order: usize) -> CheckReport {
    let mut rec = Recorder::new("pbw-z-is-one").param("N", n_half).param("order", order);
    let sys = ReductionSystem::new(n_half, order as u32);
    let mut series = Vec::new();
    for &anchor in &indices(n_half) {
        for form in [ZForm::LeftAnchored, ZForm::RightAnchored] {
            series.push((anchor, form, z_series(n_half, order, anchor, form)));
        }
    }
    for (anchor, form, z) in &series {
        for r in 1..=order {
            let res = sys
                .normal_form(z.coeff(r))
                .map(|nf| (!nf.is_zero()).then(|| nf.to_string()));
            rec.check_result(format!("Z^({r}), anchor {anchor}, {form:?}"), res);
        }
    }
    let (a0, f0, z0) = &series[0];
    for (a, f, z) in &series[1..] {
        for r in 1..=order {
            let diff = z.coeff(r).sub(z0.coeff(r));
            let res = sys.normal_form(&diff).map(|nf| (!nf.is_zero()).then(|| nf.to_string()));
            rec.check_result(format!("Z^({r}): anchor {a} {f:?} vs anchor {a0} {f0:?}"), res);
        }
    }
    rec.finish()
}

/// Hopf-structure identities that need the relations of `Y(p_N)`, compared
/// through normal forms: `M∘S = S∘M` on generators; `S(T_ij^(r))` equals
/// `(-1)^r T_{-j,-i}^(r)(-1)^{īj̄+j̄}`, the image of `T′_ij(u) =
/// Z(-u)⁻¹T_{-j,-i}(-u)(-1)^{īj̄+j̄}` once `Z = 1`; and
/// `Δ(Z(u)) = Z(u)⊗Z(u)` legwise.
pub fn check_hopf_in_y(n_half: usize, order: usize) -> CheckReport {
    let mut rec = Recorder::new("pbw-hopf-maps").param("N", n_half).param("order", order);
    let sys = ReductionSystem::new(n_half, order as u32);
    let s = Antipode::new(n_half, order);
    let nf_zero = |x: &AlgebraElement| sys.normal_form(x).map(|nf| (!nf.is_zero()).then(|| nf.to_string()));
    for &i in &indices(n_half) {
        for &j in &indices(n_half) {
            for r in 1..=order as u32 {
                let t = AlgebraElement::t(i, j, r);
                let res = (|| {
                    let ms = m_map(&s.apply(&t)?);
                    let sm = s.apply(&m_map(&t))?;
                    nf_zero(&ms.sub(&sm))
                })();
                rec.check_result(format!("M∘S = S∘M at T[{i},{j},{r}]"), res);
                let res = (|| {
                    let e = parity(i) * parity(j) + parity(j) + r as usize;
                    let want = AlgebraElement::t(-j, -i, r).scale(&sign(e));
                    nf_zero(&s.apply(&t)?.sub(&want))
                })();
                rec.check_result(format!("S(T[{i},{j},{r}])"), res);
            }
        }
    }
    let z = z_series(n_half, order, 1, ZForm::LeftAnchored);
    for r in 1..=order {
        let res = (|| {
            let mut zz = TensorElement::zero();
            for p in 0..=r {
                zz = zz.add(&TensorElement::pure(z.coeff(p), z.coeff(r - p)));
            }
            let diff = delta(n_half, z.coeff(r)).sub(&zz);
            let reduced = diff.map_legs(|x| sys.normal_form(x))?;
            Ok((!reduced.is_zero()).then(|| reduced.to_string()))
        })();
        rec.check_result(format!("Δ(Z^({r})) = Σ Z⊗Z"), res);
    }
    rec.finish()
}

/// `nf(xy) = nf(nf(x)·nf(y))` on seeded random pairs of words.
pub fn check_multiplicativity(n_half: usize, samples: usize, seed: u64) -> CheckReport {
    let mut rec = Recorder::new("pbw-multiplicativity")
        .param("N", n_half)
        .param("samples", samples)
        .param("seed", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(Word, Word)> = (0..samples)
        .map(|_| (random_word(&mut rng, n_half, 2, 2), random_word(&mut rng, n_half, 2, 2)))
        .collect();
    let cap = pairs
        .iter()
        .map(|(a, b)| total_order(a) + total_order(b))
        .max()
        .unwrap_or(1);
    let sys = ReductionSystem::new(n_half, cap);
    for (a, b) in pairs {
        let res = (|| {
            let (x, y) = (word(a.clone()), word(b.clone()));
            let direct = sys.normal_form(&x.mul(&y))?;
            let via = sys.normal_form(&sys.normal_form(&x)?.mul(&sys.normal_form(&y)?))?;
            Ok((direct != via).then(|| format!("{direct} vs {via}")))
        })();
        rec.check_result(format!("{} · {}", show_word(&a), show_word(&b)), res);
    }
    rec.finish()
}
