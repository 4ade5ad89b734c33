use std::time::Instant;

use periplectic::rmatrix::{
    check_cuv, check_f_coefficients, check_fusion_actions, check_h_vector_exchange, check_q_sandwich,
    check_relation_suite, check_unitarity, check_ybe,
};

fn timed<T>(label: &str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    eprintln!("{label}: {:?}", t.elapsed());
    out
}

#[test]
fn ybe_and_unitarity_at_n3() {
    let r = timed("ybe N=3", || check_ybe(3));
    assert!(r.passed(), "{:?}", r.witnesses);
    assert!(check_unitarity(3).passed());
}

#[test]
fn relations_at_n3() {
    let r = timed("relations N=3", || check_relation_suite(3));
    assert!(r.passed(), "{:?}", r.witnesses);
}

#[test]
fn centrality_apparatus_at_n2() {
    for (label, f) in [
        ("matrix identity", check_q_sandwich as fn(usize) -> _),
        ("cuv", check_cuv),
        ("f-coefficients", check_f_coefficients),
        ("minus-k reduction", check_h_vector_exchange),
        ("left and right actions", check_fusion_actions),
    ] {
        let r = timed(label, || f(2));
        assert!(r.passed(), "{} {:?}", r.name, r.witnesses);
    }
}
