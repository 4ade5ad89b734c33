use std::path::PathBuf;
use std::process::{Command, Output};

use periplectic::report::{ReportSet, Status};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_periplectic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("periplectic-cli-{}-{name}", std::process::id()))
}

#[test]
fn ybe_at_n2_passes() {
    let o = run(&["verify", "ybe", "--N", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS     ybe"));
}

#[test]
fn center_example_passes() {
    let o = run(&["verify", "center", "--N", "1", "--order", "4", "--budget", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn count_cell_is_eleven() {
    let o = run(&["pbw", "count", "--N", "1", "--degree", "1", "--length", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "11");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["verify", "nothing"])), 2);
    assert_eq!(code(&run(&["verify", "ybe", "--N", "0"])), 2);
    assert_eq!(code(&run(&["verify", "subquotient", "--t", "1/0"])), 2);
    assert_eq!(code(&run(&["pbw", "normal-form", "T[1,,2]"])), 2);
    assert_eq!(code(&run(&["pbw", "normal-form", "T[2,1,1]", "--N", "1"])), 2);
}

#[test]
fn overflow_exits_three() {
    let o = run(&["pbw", "normal-form", "T[1,1,3]", "--budget", "2"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn normal_form_of_a_normal_word_is_itself() {
    let o = run(&["pbw", "normal-form", "T[-1,-1,1] T[-1,-1,2]"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "T[-1,-1,1] T[-1,-1,2]");
}

#[test]
fn negative_t_values_are_accepted() {
    let o = run(&["verify", "subquotient", "--N", "1", "--t", "-1/2", "--t", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("PASS").count(), 2);
}

#[test]
fn controls_catch_their_mutations() {
    let o = run(&["verify", "controls", "--json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let set = ReportSet::from_json(&stdout(&o)).unwrap();
    assert_eq!(set.reports.len(), 3);
    assert!(set.reports.iter().all(|r| r.params.contains_key("caught")));
}

#[test]
fn json_is_versioned_sorted_and_round_trips() {
    let path = scratch("rel.json");
    let o = run(&["verify", "hfusion", "--N", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let set = ReportSet::from_json(&text).unwrap();
    assert_eq!(set.schema, 1);
    assert!(set.reports.windows(2).all(|w| w[0].name <= w[1].name));
    let again = run(&["report", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&again), 0);
    assert_eq!(
        ReportSet::from_json(&stdout(&again)).unwrap().reports.len(),
        set.reports.len()
    );
    std::fs::remove_file(path).ok();
}

#[test]
fn report_rejects_malformed_input_and_propagates_failure() {
    let path = scratch("bad.json");
    std::fs::write(&path, "{\"schema\": 2, \"reports\": []}").unwrap();
    assert_eq!(code(&run(&["report", path.to_str().unwrap()])), 2);
    let o = run(&["verify", "quotient", "--N", "1", "--json"]);
    assert_eq!(code(&o), 1);
    std::fs::write(&path, stdout(&o)).unwrap();
    assert_eq!(code(&run(&["report", path.to_str().unwrap()])), 1);
    std::fs::remove_file(path).ok();
}

#[test]
fn output_is_deterministic_apart_from_timing() {
    let strip = |o: &Output| {
        let mut set = ReportSet::from_json(&stdout(o)).unwrap();
        for r in &mut set.reports {
            r.wall_time_ms = 0;
        }
        set
    };
    let args = [
        "pbw",
        "confluence",
        "--N",
        "1",
        "--budget",
        "2",
        "--seed",
        "9",
        "--json",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(strip(&a).reports[0].status, Status::Pass);
}
