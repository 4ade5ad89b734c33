use crate::error::Result;
use crate::report::{CheckReport, Recorder};
use crate::scalars::Scalar;
use crate::superlinalg::{p_operator, q_operator, GradedOperator, Space};

use super::operator_diff;

type Op = GradedOperator<Scalar>;

/// A chain `±w₁ = ±w₂ = …` of products of `P_{pq}`, `Q_{pq}` in arity 3.
/// Words are written like `"-Q12 P13 Q23"`; `"0"` is the zero operator.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: &'static str,
    pub chain: Vec<&'static str>,
}

/// The sixteen relations among `P_{pq}`, `Q_{pq}` that imply the Yang–Baxter
/// equation, including the evaluation of either side of `triple-1` as `P₁₃`.
pub fn relation_suite() -> Vec<Relation> {
    let r = |name, chain: &[&'static str]| Relation {
        name,
        chain: chain.to_vec(),
    };
    vec![
        r("pair-1", &["P12 P13", "P23 P12", "P13 P23"]),
        r("pair-2", &["P13 P12", "P12 P23", "P23 P13"]),
        r("pair-3", &["Q13 Q12", "-P23 Q12", "-Q13 P23"]),
        r("pair-4", &["Q12 Q13", "-Q12 P23", "-P23 Q13"]),
        r("pair-5", &["Q12 P13", "-Q12 Q23", "-P13 Q23"]),
        r("pair-6", &["P13 Q12", "-Q23 Q12", "-Q23 P13"]),
        r("pair-7", &["P12 Q13", "Q23 P12", "Q23 Q13"]),
        r("pair-8", &["Q13 P12", "P12 Q23", "Q13 Q23"]),
        r("triple-1", &["P12 P13 P23", "P23 P13 P12"]),
        r("triple-1-value", &["P12 P13 P23", "P13"]),
        r("triple-2", &["Q12 P13 Q23", "0"]),
        r("triple-3", &["Q23 P13 Q12", "0"]),
        r(
            "triple-4",
            &["P12 P13 Q23", "P23 Q13 P12", "Q12 P13 P23", "-Q12 Q13 Q23"],
        ),
        r(
            "triple-5",
            &["Q23 P13 P12", "P12 Q13 P23", "P23 P13 Q12", "-Q23 Q13 Q12"],
        ),
        r("triple-6", &["P12 Q13 Q23", "Q23 Q13 P12"]),
        r("triple-7", &["Q12 Q13 P23", "P23 Q13 Q12"]),
    ]
}

struct Generators {
    space: Space,
    p: [Op; 3],
    q: [Op; 3],
}

impl Generators {
    fn new(n_half: usize) -> Result<Self> {
        let (p, q) = (p_operator::<Scalar>(n_half), q_operator::<Scalar>(n_half));
        let pairs = [[1, 2], [1, 3], [2, 3]];
        let emb = |x: &Op| -> Result<[Op; 3]> {
            Ok([x.embed(&pairs[0], 3)?, x.embed(&pairs[1], 3)?, x.embed(&pairs[2], 3)?])
        };
        Ok(Generators {
            space: Space::new(n_half, 3),
            p: emb(&p)?,
            q: emb(&q)?,
        })
    }

    fn word(&self, w: &str) -> Result<Op> {
        if w == "0" {
            return Ok(Op::zero(self.space));
        }
        let (neg, body) = match w.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, w),
        };
        let mut acc = Op::identity(self.space);
        for tok in body.split_whitespace() {
            let slot = match &tok[1..] {
                "12" => 0,
                "13" => 1,
                "23" => 2,
                _ => panic!("unknown pair in {tok}"),
            };
            let g = if tok.starts_with('P') { &self.p } else { &self.q };
            acc = acc.compose(&g[slot])?;
        }
        Ok(if neg { acc.neg() } else { acc })
    }
}

/// Checks every equality of every chain in [`relation_suite`].
pub fn check_relation_suite(n_half: usize) -> CheckReport {
    let mut rec = Recorder::new("relations").param("N", n_half);
    let gens = match Generators::new(n_half) {
        Ok(g) => g,
        Err(e) => {
            rec.error("setup", e);
            return rec.finish();
        }
    };
    for rel in relation_suite() {
        let first = rel.chain[0];
        for other in &rel.chain[1..] {
            let res = gens
                .word(first)
                .and_then(|a| gens.word(other).and_then(|b| operator_diff(&a, &b)));
            rec.check_result(format!("{}: {first} = {other}", rel.name), res);
        }
    }
    rec.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_has_sixteen_relations() {
        assert_eq!(relation_suite().len(), 16);
    }

    #[test]
    fn relations_hold_for_small_n() {
        for n in 1..=2 {
            let r = check_relation_suite(n);
            assert!(r.passed(), "{:?}", r.witnesses);
        }
    }

    #[test]
    fn a_wrong_relation_is_caught() {
        let g = Generators::new(1).unwrap();
        let a = g.word("Q13 Q12").unwrap();
        let b = g.word("P23 Q12").unwrap();
        assert!(operator_diff(&a, &b).unwrap().is_some());
    }
}
