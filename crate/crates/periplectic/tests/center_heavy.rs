use periplectic::center::{
    check_a_forms, check_antipode, check_centrality, check_centrality_control, check_centrality_in_x, check_e_grading,
    check_gr_image, check_independence, odd_coefficients,
};

#[test]
fn centrality_in_y_at_n1() {
    let r = check_centrality(1, 3, 3, None);
    assert!(r.passed(), "{:?}", r.witnesses);
    assert_eq!(r.checked, 3 * 4 * 3);
    assert!(!check_centrality_control(1, 3).passed());
}

#[test]
fn centrality_in_x_without_rewriting() {
    for (n, r, s) in [(1, 2, 2), (1, 3, 1), (1, 4, 2), (2, 2, 1)] {
        let rep = check_centrality_in_x(n, r, s);
        assert!(rep.passed(), "N={n} r={r} s={s}: {:?}", rep.witnesses);
    }
}

#[test]
fn centrality_in_y_at_n2() {
    let r = check_centrality(2, 2, 1, None);
    assert!(r.passed(), "{:?}", r.witnesses);
}

#[test]
fn a_orderings_agree() {
    for n in 1..=2 {
        let r = check_a_forms(n, 3);
        assert!(r.passed(), "{:?}", r.witnesses);
    }
}

#[test]
fn gr_image_and_independence() {
    let r = check_gr_image(1, &[1, 2]);
    assert!(r.passed(), "{:?}", r.witnesses);
    let r = check_gr_image(2, &[1]);
    assert!(r.passed(), "{:?}", r.witnesses);
    assert!(check_independence(1).passed());
}

#[test]
fn antipode_inverts_b() {
    for n in 1..=2 {
        let r = check_antipode(n, 2);
        assert!(r.passed(), "{:?}", r.witnesses);
    }
}

#[test]
fn grading_and_odd_coefficients() {
    assert!(check_e_grading(2, 4).passed());
    let r = odd_coefficients(1, 3);
    assert_eq!(r.params["B^(1)"], "0");
    assert_eq!(r.params["B^(3)"], "0");
}
