//! Prints one PASS/FAIL line per acceptance criterion.
//!
//! Criteria 8 and 9 are known to fail: the RTT relations together with
//! `Z(u) = 1` force `B^(2) = 0`, so the reduction system cannot be confluent
//! past order 2 (see `pbw_heavy.rs`). The process exits nonzero when any
//! other criterion fails, or when a known failure starts passing, so that
//! either change is noticed.

use std::process::ExitCode;
use std::time::Instant;

use periplectic::center::{check_antipode, check_centrality, check_centrality_control, check_gr_image};
use periplectic::pbw::{
    check_ambiguities, check_ambiguities_in, check_confluence, check_counts, check_z_is_one, default_perturbation,
    pbw_count, FilteredIdeal, ReductionSystem,
};
use periplectic::report::{CheckReport, Recorder};
use periplectic::reps::{check_rtt_rep, check_subquotient, check_twist_pair, check_twist_single, standard_points};
use periplectic::rmatrix::{
    check_cuv, check_f_coefficients, check_fusion_actions, check_h_vector_exchange, check_hfusion, check_q_sandwich,
    check_relation_suite, check_unitarity, check_ybe, check_ybe_mutated,
};
use periplectic::scalars::{frac, int};
use periplectic::yangian::AlgebraElement;

const KNOWN_FAILURES: [usize; 2] = [8, 9];

struct Criterion {
    id: usize,
    title: &'static str,
    run: fn() -> Vec<CheckReport>,
}

fn over_n(ns: &[usize], f: fn(usize) -> CheckReport) -> Vec<CheckReport> {
    ns.iter().map(|&n| f(n)).collect()
}

fn fact(name: &str, ok: bool, witness: String) -> CheckReport {
    let mut rec = Recorder::new(name);
    rec.check(ok, || witness);
    rec.finish()
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            title: "Yang-Baxter equation, N = 1..3",
            run: || over_n(&[1, 2, 3], check_ybe),
        },
        Criterion {
            id: 2,
            title: "sixteen P/Q relations, N = 1..3",
            run: || over_n(&[1, 2, 3], check_relation_suite),
        },
        Criterion {
            id: 3,
            title: "unitarity R(u,v)R(-u,-v) = 1 - 1/(u-v)^2, N = 1..3",
            run: || over_n(&[1, 2, 3], check_unitarity),
        },
        Criterion {
            id: 4,
            title: "fusion identities for H(u), n = 2, 3, N = 1, 2",
            run: || {
                [1, 2]
                    .into_iter()
                    .flat_map(|n| (2..=3).flat_map(move |k| check_hfusion(n, k)))
                    .collect()
            },
        },
        Criterion {
            id: 5,
            title: "centrality apparatus, N = 1, 2",
            run: || {
                let mut out = Vec::new();
                for n in 1..=2 {
                    out.push(check_q_sandwich(n));
                    out.push(check_cuv(n));
                    out.push(check_f_coefficients(n));
                    out.push(check_fusion_actions(n));
                }
                out.push(check_h_vector_exchange(2));
                out
            },
        },
        Criterion {
            id: 6,
            title: "evaluation modules: RTT defects vanish, Z(u) = 1 - 1/(u+t)^2",
            run: || {
                [1, 2]
                    .into_iter()
                    .flat_map(|n| check_rtt_rep(n, &standard_points(), 3, 5))
                    .collect()
            },
        },
        Criterion {
            id: 7,
            title: "twisting factors through Y iff t = 0; the pair at t = 2 factors",
            run: || {
                let six = [int(0), int(1), int(-1), int(2), int(-2), frac(1, 2)];
                vec![
                    check_twist_single(1, &six, 4),
                    check_twist_single(2, &six, 4),
                    check_twist_pair(1, &int(2), 4),
                ]
            },
        },
        Criterion {
            id: 8,
            title: "PBW counts, confluence and ambiguities, N = 1",
            run: || {
                let cell = pbw_count(1, 1, 2);
                vec![
                    check_counts(1, 4, 4),
                    fact("pbw-count-cell", cell == 11, format!("d ≤ 1, m ≤ 2 gives {cell}")),
                    check_confluence(1, 100, 4, 3, 1),
                    check_ambiguities(1, 3),
                ]
            },
        },
        Criterion {
            id: 9,
            title: "Z(u) - 1 normal-forms to 0, N = 1, L = 4",
            run: || vec![check_z_is_one(1, 4)],
        },
        Criterion {
            id: 10,
            title: "[B^(r), T_kl^(s)] normal-forms to 0, N = 1, r, s ≤ 3",
            run: || vec![check_centrality(1, 3, 3, None)],
        },
        Criterion {
            id: 11,
            title: "top gr' component of B^(2), B^(4) is 2 Y_11",
            run: || vec![check_gr_image(1, &[1, 2])],
        },
        Criterion {
            id: 12,
            title: "S(B(u)) = B(u)^-1 through order 2, N = 1",
            run: || vec![check_antipode(1, 2)],
        },
        Criterion {
            id: 13,
            title: "one-dimensional subquotient, N = 1 at t = 3, 0, -1/2 and N = 2 at t = 1",
            run: || {
                let mut out: Vec<CheckReport> = [int(3), int(0), frac(-1, 2)]
                    .iter()
                    .map(|t| check_subquotient(1, t, 4))
                    .collect();
                out.push(check_subquotient(2, &int(1), 4));
                out
            },
        },
        Criterion {
            id: 14,
            title: "negative controls are caught",
            run: || {
                let perturbed = ReductionSystem::new(1, 6).with_perturbation(default_perturbation(1));
                vec![
                    check_ybe_mutated(1).expect_failure("control-flipped-q-sign"),
                    check_ambiguities_in(&perturbed, 2, "pbw-ambiguities-perturbed")
                        .expect_failure("control-dropped-d-term"),
                    check_centrality_control(1, 3).expect_failure("control-t2-in-place-of-b2"),
                ]
            },
        },
    ]
}

fn clip(s: &str, n: usize) -> String {
    match s.char_indices().nth(n) {
        Some((k, _)) => format!("{}…", &s[..k]),
        None => s.to_string(),
    }
}

/// Why criteria 8 and 9 fail, recomputed each run.
fn obstruction() -> String {
    let x = AlgebraElement::t(1, 1, 1);
    let b2 = AlgebraElement::t(1, 1, 2).scale(&int(2)).sub(&x.mul(&x));
    let in_ideal = FilteredIdeal::new(1, 4, true).contains(&b2);
    match ReductionSystem::new(1, 4).normal_form(&b2) {
        Ok(nf) => format!("B^(2) = {b2} lies in the ideal of Y (weight ≤ 4): {in_ideal}; its normal form is {nf}"),
        Err(e) => format!("normal form of B^(2): {e}"),
    }
}

fn main() -> ExitCode {
    let mut surprises = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let reports = (c.run)();
        let secs = start.elapsed().as_secs_f64();
        let failing: Vec<&CheckReport> = reports.iter().filter(|r| !r.passed()).collect();
        let ok = failing.is_empty();
        println!(
            "{} {:>2} {} ({} reports, {secs:.1} s)",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            reports.len()
        );
        for r in &failing {
            let w = r.witnesses.first().map(String::as_str).unwrap_or("");
            println!("        {} [{:?}]: {}", r.name, r.status, clip(w, 160));
        }
        if !ok && KNOWN_FAILURES.contains(&c.id) {
            println!("        known obstruction: {}", obstruction());
        }
        if ok == KNOWN_FAILURES.contains(&c.id) {
            surprises.push(c.id);
        }
    }
    if surprises.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("criteria with an unexpected outcome: {surprises:?}");
        ExitCode::FAILURE
    }
}
