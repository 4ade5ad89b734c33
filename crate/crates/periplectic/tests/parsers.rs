//! The properties asserted by the fuzz targets, run on their seed corpora
//! and on random strings.

use std::path::Path;

use periplectic::report::ReportSet;
use periplectic::scalars::parse_scalar;
use periplectic::yangian::AlgebraElement;
use proptest::prelude::*;

fn scalar_round_trip(s: &str) {
    if let Ok(x) = parse_scalar(s) {
        assert_eq!(parse_scalar(&x.to_string()).unwrap(), x, "{s:?}");
    }
}

fn element_round_trip(s: &str) {
    if let Ok(x) = s.parse::<AlgebraElement>() {
        let printed = x.to_string();
        assert_eq!(
            printed.parse::<AlgebraElement>().unwrap(),
            x,
            "{s:?} printed as {printed:?}"
        );
    }
}

fn report_round_trip(s: &str) {
    if let Ok(set) = ReportSet::from_json(s) {
        assert_eq!(ReportSet::from_json(&set.to_json()).unwrap(), set);
    }
}

fn corpus(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out = Vec::new();
    for entry in std::fs::read_dir(&dir).unwrap_or_else(|e| panic!("{}: {e}", dir.display())) {
        let bytes = std::fs::read(entry.unwrap().path()).unwrap();
        out.push(String::from_utf8(bytes).unwrap());
    }
    assert!(!out.is_empty());
    out
}

#[test]
fn seed_corpora() {
    for s in corpus("parse_scalar") {
        scalar_round_trip(&s);
    }
    for s in corpus("parse_element") {
        element_round_trip(&s);
    }
    let reports = corpus("report_json");
    let valid = reports.iter().filter(|s| ReportSet::from_json(s).is_ok()).count();
    assert!(valid >= 2 && valid < reports.len());
    for s in reports {
        report_round_trip(&s);
    }
}

proptest! {
    #[test]
    fn scalars_from_noise(s in "[-+ 0-9/]{0,12}") {
        scalar_round_trip(&s);
    }

    #[test]
    fn elements_from_noise(s in r"[-+ 0-9/T\[\],]{0,40}") {
        element_round_trip(&s);
    }

    #[test]
    fn elements_from_token_soup(toks in prop::collection::vec(prop_oneof![
        Just("T[1,1,2]"), Just("T[-1,1,1]"), Just("T[1,-1,0]"), Just(" + "), Just(" - "),
        Just("2"), Just("-1/3 "), Just(" "), Just("0"), Just("T[1,1,"),
    ], 0..8)) {
        element_round_trip(&toks.concat());
    }

    #[test]
    fn reports_from_noise(s in r#"[{}\[\]":,a-z0-9 ]{0,60}"#) {
        report_round_trip(&s);
    }
}
