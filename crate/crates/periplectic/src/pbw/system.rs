use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use num_traits::One;
use serde::Serialize;

use super::order::{is_admissible, is_misordered};
use crate::error::{Error, Result};
use crate::scalars::{frac, sign, Scalar};
use crate::superlinalg::{indices, parity};
use crate::yangian::{rtt_rhs, show_word, AlgebraElement, GenTriple, Word};

/// Which redex the rewriting picks first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Smallest starting position; a single letter beats a pair there.
    Leftmost,
    /// Largest ending position; a pair beats a single letter there.
    Rightmost,
}

/// A place in a word where a rule applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Redex {
    /// a non-admissible letter
    Single(usize),
    /// a misordered adjacent pair starting here
    Pair(usize),
}

/// Removes one word from the `D`-part of one reordering rule; used to show
/// that the ambiguity checks notice a broken rule.
#[derive(Clone, Debug, PartialEq)]
pub struct Perturbation {
    pub pair: (GenTriple, GenTriple),
    pub dropped: Word,
}

/// One rule application, for audit trails.
#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub word: String,
    pub rule: String,
    pub result: String,
}

const DEFAULT_STEP_BOUND: usize = 20_000_000;

type Cache = Mutex<HashMap<Word, Arc<AlgebraElement>>>;

/// The rewriting system on words in the generators of `Y(p_N)`: letters
/// outside `J` are replaced through `S(u) = T(u)`, misordered pairs are
/// swapped through the RTT relation. Generators of order above `cap` are
/// never produced silently.
pub struct ReductionSystem {
    n_half: usize,
    cap: u32,
    step_bound: usize,
    perturbation: Option<Perturbation>,
    /// `S^(n)_ij` for `n = 0, 1, …` as far as computed
    s_coeffs: Mutex<Vec<BTreeMap<(i32, i32), AlgebraElement>>>,
    singles: Mutex<HashMap<GenTriple, Arc<AlgebraElement>>>,
    pairs: Mutex<HashMap<(GenTriple, GenTriple), Arc<AlgebraElement>>>,
    memo: [Cache; 2],
}

struct Ctx {
    steps: usize,
    active: HashSet<Word>,
    trace: Option<(Vec<TraceStep>, HashMap<Word, Arc<AlgebraElement>>)>,
}

fn strategy_slot(s: Strategy) -> usize {
    match s {
        Strategy::Leftmost => 0,
        Strategy::Rightmost => 1,
    }
}

impl ReductionSystem {
    pub fn new(n_half: usize, cap: u32) -> Self {
        let mut one = BTreeMap::new();
        for &i in &indices(n_half) {
            one.insert((i, i), AlgebraElement::one());
        }
        ReductionSystem {
            n_half,
            cap,
            step_bound: DEFAULT_STEP_BOUND,
            perturbation: None,
            s_coeffs: Mutex::new(vec![one]),
            singles: Mutex::default(),
            pairs: Mutex::default(),
            memo: Default::default(),
        }
    }

    pub fn with_step_bound(mut self, bound: usize) -> Self {
        self.step_bound = bound;
        self
    }

    pub fn with_perturbation(mut self, p: Perturbation) -> Self {
        self.perturbation = Some(p);
        self
    }

    pub fn n_half(&self) -> usize {
        self.n_half
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn perturbation(&self) -> Option<&Perturbation> {
        self.perturbation.as_ref()
    }

    fn check_letter(&self, g: &GenTriple) -> Result<()> {
        g.check_range(self.n_half)?;
        if g.order() > self.cap {
            return Err(Error::TruncationOverflow {
                order: g.order() as usize,
                budget: self.cap as usize,
            });
        }
        Ok(())
    }

    /// `S^(n)_ij` in the free algebra, from `S(u)·T̃(-u) = 1`:
    /// `S^(n) = -Σ_{p=1}^{n} S^(n-p) X^(p)` with
    /// `X^(p)_kl = (-1)^p T^(p)_{-l,-k} (-1)^{k̄l̄+l̄}`.
    pub fn s_coefficient(&self, i: i32, j: i32, n: usize) -> AlgebraElement {
        let mut s = self.s_coeffs.lock().expect("S cache");
        let idx = indices(self.n_half);
        while s.len() <= n {
            let m = s.len();
            let mut next = BTreeMap::new();
            for &a in &idx {
                for &c in &idx {
                    let mut acc = AlgebraElement::zero();
                    for p in 1..=m {
                        for &k in &idx {
                            let Some(left) = s[m - p].get(&(a, k)) else {
                                continue;
                            };
                            let x = AlgebraElement::t(-c, -k, p as u32);
                            let e = parity(k) * parity(c)
                                + parity(c)
                                + p
                                + (parity(a) + parity(k)) * (parity(k) + parity(c));
                            acc.add_scaled(&left.mul(&x), &-sign(e));
                        }
                    }
                    if !acc.is_zero() {
                        next.insert((a, c), acc);
                    }
                }
            }
            s.push(next);
        }
        s[n].get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Replacement for a letter outside `J`. For `i ≠ -j` it is
    /// `S^(r+1)_ij`, whose single-letter part is the admissible
    /// `T^(r+1)_{-j,-i}(-1)^{īj̄+j̄+r}`; for `i = -j` it is `C/2`, `C` the
    /// products in `S^(r+1)_ij`.
    pub fn red1_rhs(&self, g: GenTriple) -> Result<AlgebraElement> {
        if is_admissible(&g) {
            return Err(Error::NotReducible(g.to_string()));
        }
        self.check_letter(&g)?;
        if let Some(x) = self.singles.lock().expect("rule cache").get(&g) {
            return Ok((**x).clone());
        }
        let s = self.s_coefficient(g.i, g.j, g.order() as usize);
        let rhs = if g.i == -g.j {
            let products = s
                .terms()
                .filter(|(w, _)| w.len() > 1)
                .map(|(w, c)| (w.clone(), c.clone()));
            AlgebraElement::from_terms(products).scale(&frac(1, 2))
        } else {
            s
        };
        self.singles
            .lock()
            .expect("rule cache")
            .insert(g, Arc::new(rhs.clone()));
        Ok(rhs)
    }

    /// The `D` of the reordering rule: `[T_a, T_b]` from the RTT relation,
    /// minus the perturbed word if any.
    pub fn d_part(&self, a: GenTriple, b: GenTriple) -> Result<AlgebraElement> {
        self.check_letter(&a)?;
        self.check_letter(&b)?;
        let mut d = rtt_rhs(self.n_half, a.i, a.j, b.i, b.j, a.order() as usize, b.order() as usize);
        if d.max_order() > self.cap {
            return Err(Error::TruncationOverflow {
                order: d.max_order() as usize,
                budget: self.cap as usize,
            });
        }
        if let Some(p) = &self.perturbation {
            if p.pair == (a, b) {
                let c = d.coeff(&p.dropped);
                d.add_term(p.dropped.clone(), &-c);
            }
        }
        Ok(d)
    }

    /// Replacement for a misordered pair:
    /// `T_a T_b → (-1)^{|a||b|} T_b T_a + D`, or `D/2` for an odd square.
    pub fn red2_rhs(&self, a: GenTriple, b: GenTriple) -> Result<AlgebraElement> {
        if !is_misordered(&a, &b) {
            return Err(Error::NotMisordered(a.to_string(), b.to_string()));
        }
        if let Some(x) = self.pairs.lock().expect("rule cache").get(&(a, b)) {
            return Ok((**x).clone());
        }
        let d = self.d_part(a, b)?;
        let rhs = if a == b {
            d.scale(&frac(1, 2))
        } else {
            let mut x = AlgebraElement::monomial(vec![b, a], sign(a.parity() * b.parity()));
            x.add_scaled(&d, &Scalar::one());
            x
        };
        self.pairs
            .lock()
            .expect("rule cache")
            .insert((a, b), Arc::new(rhs.clone()));
        Ok(rhs)
    }

    pub fn find_redex(&self, w: &[GenTriple], strategy: Strategy) -> Option<Redex> {
        let single = |p: usize| !is_admissible(&w[p]);
        let pair = |p: usize| p + 1 < w.len() && is_misordered(&w[p], &w[p + 1]);
        match strategy {
            Strategy::Leftmost => (0..w.len()).find_map(|p| {
                if single(p) {
                    Some(Redex::Single(p))
                } else if pair(p) {
                    Some(Redex::Pair(p))
                } else {
                    None
                }
            }),
            Strategy::Rightmost => (0..w.len()).rev().find_map(|e| {
                if e > 0 && pair(e - 1) {
                    Some(Redex::Pair(e - 1))
                } else if single(e) {
                    Some(Redex::Single(e))
                } else {
                    None
                }
            }),
        }
    }

    /// Every redex of `w`, singles before pairs at each position.
    pub fn redexes(&self, w: &[GenTriple]) -> Vec<Redex> {
        let mut out = Vec::new();
        for p in 0..w.len() {
            if !is_admissible(&w[p]) {
                out.push(Redex::Single(p));
            }
            if p + 1 < w.len() && is_misordered(&w[p], &w[p + 1]) {
                out.push(Redex::Pair(p));
            }
        }
        out
    }

    /// One rewriting step at `redex`.
    pub fn apply_redex(&self, w: &[GenTriple], redex: Redex) -> Result<AlgebraElement> {
        let (start, len, rhs) = match redex {
            Redex::Single(p) => (p, 1, self.red1_rhs(w[p])?),
            Redex::Pair(p) => (p, 2, self.red2_rhs(w[p], w[p + 1])?),
        };
        let mut out = AlgebraElement::zero();
        for (mid, c) in rhs.terms() {
            let mut v = Vec::with_capacity(w.len() + mid.len());
            v.extend_from_slice(&w[..start]);
            v.extend_from_slice(mid);
            v.extend_from_slice(&w[start + len..]);
            out.add_term(v, c);
        }
        Ok(out)
    }

    fn rule_label(w: &[GenTriple], redex: Redex) -> String {
        match redex {
            Redex::Single(p) => format!("red1 {}", w[p]),
            Redex::Pair(p) => format!("red2 {} {}", w[p], w[p + 1]),
        }
    }

    fn nf_word(&self, w: &[GenTriple], strategy: Strategy, ctx: &mut Ctx) -> Result<Arc<AlgebraElement>> {
        let slot = strategy_slot(strategy);
        let cached = match &ctx.trace {
            Some((_, local)) => local.get(w).cloned(),
            None => self.memo[slot].lock().expect("memo").get(w).cloned(),
        };
        if let Some(x) = cached {
            return Ok(x);
        }
        let out = match self.find_redex(w, strategy) {
            None => Arc::new(AlgebraElement::monomial(w.to_vec(), Scalar::one())),
            Some(redex) => {
                if !ctx.active.insert(w.to_vec()) {
                    return Err(Error::Cycle);
                }
                ctx.steps += 1;
                if ctx.steps > self.step_bound {
                    return Err(Error::StepBound(self.step_bound));
                }
                let next = self.apply_redex(w, redex)?;
                if let Some((steps, _)) = ctx.trace.as_mut() {
                    steps.push(TraceStep {
                        word: show_word(w),
                        rule: Self::rule_label(w, redex),
                        result: next.to_string(),
                    });
                }
                let mut acc = AlgebraElement::zero();
                for (v, c) in next.terms() {
                    let x = self.nf_word(v, strategy, ctx)?;
                    acc.add_scaled(&x, c);
                }
                ctx.active.remove(w);
                Arc::new(acc)
            }
        };
        match ctx.trace.as_mut() {
            Some((_, local)) => {
                local.insert(w.to_vec(), out.clone());
            }
            None => {
                self.memo[slot].lock().expect("memo").insert(w.to_vec(), out.clone());
            }
        }
        Ok(out)
    }

    fn run(&self, x: &AlgebraElement, strategy: Strategy, ctx: &mut Ctx) -> Result<AlgebraElement> {
        for (w, _) in x.terms() {
            for g in w {
                self.check_letter(g)?;
            }
        }
        let mut acc = AlgebraElement::zero();
        for (w, c) in x.terms() {
            let y = self.nf_word(w, strategy, ctx)?;
            acc.add_scaled(&y, c);
        }
        Ok(acc)
    }

    fn ctx(trace: bool) -> Ctx {
        Ctx {
            steps: 0,
            active: HashSet::new(),
            trace: trace.then(Default::default),
        }
    }

    /// Normal form under the leftmost strategy.
    pub fn normal_form(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.normal_form_with(x, Strategy::Leftmost)
    }

    pub fn normal_form_with(&self, x: &AlgebraElement, strategy: Strategy) -> Result<AlgebraElement> {
        self.run(x, strategy, &mut Self::ctx(false))
    }

    /// Normal form together with every rule application, computed without
    /// the shared memo so the trace is complete.
    pub fn trace(&self, x: &AlgebraElement, strategy: Strategy) -> Result<(AlgebraElement, Vec<TraceStep>)> {
        let mut ctx = Self::ctx(true);
        let nf = self.run(x, strategy, &mut ctx)?;
        Ok((nf, ctx.trace.map(|t| t.0).unwrap_or_default()))
    }

    /// Normal form of `x` after first rewriting the whole word `w` at a
    /// chosen redex; the basic step of ambiguity resolution.
    pub fn reduce_at(&self, w: &[GenTriple], redex: Redex) -> Result<AlgebraElement> {
        let next = self.apply_redex(w, redex)?;
        self.normal_form(&next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::order::is_normal_word;
    use crate::scalars::int;
    use crate::yangian::s_matrix;

    fn g(i: i32, j: i32, order: u32) -> GenTriple {
        GenTriple::of_order(i, j, order)
    }

    #[test]
    fn s_coefficients_match_the_series_inverse() {
        for n in 1..=2 {
            let sys = ReductionSystem::new(n, 4);
            let s = s_matrix(n, 3);
            for &i in &indices(n) {
                for &j in &indices(n) {
                    for k in 0..=3 {
                        assert_eq!(&sys.s_coefficient(i, j, k), s.entry(i, j).coeff(k), "{i} {j} {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn first_order_red1_has_no_correction() {
        let sys = ReductionSystem::new(2, 3);
        for &i in &indices(2) {
            for &j in &indices(2) {
                let t = g(i, j, 1);
                if is_admissible(&t) {
                    assert!(matches!(sys.red1_rhs(t), Err(Error::NotReducible(_))));
                    continue;
                }
                let e = parity(i) * parity(j) + parity(j);
                let want = if i == -j {
                    AlgebraElement::zero()
                } else {
                    AlgebraElement::monomial(vec![g(-j, -i, 1)], sign(e))
                };
                assert_eq!(sys.red1_rhs(t).unwrap(), want, "{t}");
            }
        }
    }

    #[test]
    fn red1_lowers_degree_and_lands_in_j() {
        let sys = ReductionSystem::new(1, 6);
        for t in crate::pbw::order::all_triples(1, 5) {
            if is_admissible(&t) {
                continue;
            }
            let rhs = sys.red1_rhs(t).unwrap();
            for (w, c) in rhs.terms() {
                if w.len() == 1 {
                    let e = parity(t.i) * parity(t.j) + parity(t.j) + t.r as usize;
                    assert_eq!(w[0], GenTriple::new(-t.j, -t.i, t.r));
                    assert_eq!(c, &sign(e));
                    assert!(is_admissible(&w[0]));
                } else {
                    let deg: u32 = w.iter().map(|x| x.r).sum();
                    assert!(deg < t.r, "{t}: {}", show_word(w));
                }
            }
        }
    }

    #[test]
    fn odd_square_is_half_the_bracket() {
        let sys = ReductionSystem::new(1, 2);
        let x = g(1, -1, 1);
        let d = rtt_rhs(1, 1, -1, 1, -1, 1, 1);
        assert_eq!(sys.red2_rhs(x, x).unwrap(), d.scale(&frac(1, 2)));
        let even = g(-1, -1, 1);
        assert!(matches!(sys.red2_rhs(even, even), Err(Error::NotMisordered(..))));
    }

    #[test]
    fn single_admissible_letter_is_normal() {
        let sys = ReductionSystem::new(2, 3);
        for t in crate::pbw::order::admissible_triples(2, 3) {
            let x = AlgebraElement::generator(t);
            assert_eq!(sys.normal_form(&x).unwrap(), x);
        }
    }

    #[test]
    fn swapped_pair_leads() {
        let sys = ReductionSystem::new(1, 2);
        let (a, b) = (g(-1, 1, 1), g(-1, -1, 1));
        assert!(is_misordered(&b, &a));
        let nf = sys.normal_form(&AlgebraElement::monomial(vec![b, a], int(1))).unwrap();
        assert_eq!(nf.coeff(&[a, b]), int(1));
        for (w, _) in nf.terms() {
            assert!(is_normal_word(w));
        }
    }

    #[test]
    fn overflow_is_reported() {
        let sys = ReductionSystem::new(1, 2);
        // a rule whose D has a single generator of order 3
        let x = AlgebraElement::monomial(vec![g(1, -1, 2), g(1, 1, 2)], int(1));
        assert!(matches!(sys.normal_form(&x), Err(Error::TruncationOverflow { .. })));
        let y = AlgebraElement::generator(g(1, 1, 3));
        assert!(matches!(sys.normal_form(&y), Err(Error::TruncationOverflow { .. })));
    }

    #[test]
    fn strategies_agree_on_a_small_word() {
        let sys = ReductionSystem::new(1, 6);
        let w = vec![g(1, 1, 2), g(1, -1, 2), g(-1, 1, 1), g(1, 1, 1)];
        let x = AlgebraElement::monomial(w, int(1));
        let a = sys.normal_form_with(&x, Strategy::Leftmost).unwrap();
        let b = sys.normal_form_with(&x, Strategy::Rightmost).unwrap();
        assert_eq!(a, b);
        for (w, _) in a.terms() {
            assert!(is_normal_word(w));
        }
    }

    #[test]
    fn trace_replays_and_serializes() {
        let sys = ReductionSystem::new(1, 4);
        let x = AlgebraElement::monomial(vec![g(1, 1, 2), g(-1, 1, 1)], int(1));
        let (nf, steps) = sys.trace(&x, Strategy::Leftmost).unwrap();
        assert_eq!(nf, sys.normal_form(&x).unwrap());
        assert!(!steps.is_empty());
        assert!(steps[0].rule.starts_with("red1"));
        let json = serde_json::to_string(&steps).unwrap();
        assert!(json.contains("\"rule\""));
    }

    #[test]
    fn step_bound_is_enforced() {
        let sys = ReductionSystem::new(1, 6).with_step_bound(2);
        let w = vec![g(1, 1, 2), g(1, -1, 2), g(-1, 1, 1), g(1, 1, 1)];
        let x = AlgebraElement::monomial(w, int(1));
        assert!(matches!(sys.normal_form(&x), Err(Error::StepBound(2))));
    }
}
