use std::time::Instant;

use periplectic::pbw::{
    check_ambiguities, check_ambiguities_in, check_confluence, check_counts, check_z_is_one, default_perturbation,
    pbw_count, FilteredIdeal, ReductionSystem,
};
use periplectic::scalars::int;
use periplectic::yangian::AlgebraElement;

fn timed<T>(label: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    eprintln!("{label}: {:.2?}", start.elapsed());
    out
}

fn b2() -> AlgebraElement {
    let x = AlgebraElement::t(1, 1, 1);
    AlgebraElement::t(1, 1, 2).scale(&int(2)).sub(&x.mul(&x))
}

#[test]
fn counts_through_degree_and_length_four() {
    for n in 1..=2 {
        let r = check_counts(n, 4, 4);
        assert!(r.passed(), "{:?}", r.witnesses);
        assert_eq!(r.checked, 25);
    }
    assert_eq!(pbw_count(1, 1, 2), 11);
}

#[test]
fn confluence_with_orders_at_most_two() {
    let r = timed("confluence order 2", || check_confluence(1, 100, 4, 2, 1));
    assert!(r.passed(), "{:?}", r.witnesses);
}

#[test]
fn ambiguities_of_order_two_resolve() {
    let r = timed("ambiguities order 2", || check_ambiguities(1, 2));
    assert!(r.passed(), "{:?}", r.witnesses);
    let p = check_ambiguities_in(
        &ReductionSystem::new(1, 6).with_perturbation(default_perturbation(1)),
        2,
        "perturbed",
    );
    assert!(!p.passed());
}

/// At order three the rules stop being confluent. The obstruction is
/// `B^(2) = 2T_11^(2) - (T_11^(1))²`: it is a nonzero normal word
/// combination, yet the RTT relations together with `Z(u) = 1` put it in
/// the ideal, which the linear algebra in the free algebra confirms.
#[test]
fn order_three_obstruction() {
    let sys = ReductionSystem::new(1, 4);
    let nb = sys.normal_form(&b2()).unwrap();
    assert!(!nb.is_zero());
    assert!(!check_z_is_one(1, 3).passed());
    assert!(!timed("ambiguities order 3", || check_ambiguities(1, 3)).passed());
    let y = timed("ideal weight 4", || FilteredIdeal::new(1, 4, true));
    assert!(y.contains(&b2()));
}
