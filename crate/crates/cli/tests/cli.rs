use std::process::{Command, Output};

use ellweyl::ncword::NormalForm;
use ellweyl::special_fn::{WeightValue, C64};
use ellweyl::verify::CheckReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellweyl")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn navon_example() {
    assert_eq!(stdout(&["normal-order", "--system", "weyl", "--word", "xyxxyxyy", "--family", "q", "--q", "1,0"]), "x^4 y^4 + 4 x^3 y^3 + 2 x^2 y^2");
}

#[test]
fn gaussian_binomial() {
    assert_eq!(stdout(&["binom", "--family", "q", "--q", "0.5,0", "--n", "2", "--k", "1"]), "1.5");
}

#[test]
fn verify_single_check_as_json() {
    let text = stdout(&["verify", "--id", "theta-addition", "--seed", "1", "--json"]);
    let report: CheckReport = serde_json::from_str(&text).unwrap();
    assert!(report.pass);
    assert_eq!(report.id, "theta-addition");
    assert_eq!(report.seed, 1);
}

#[test]
fn verify_text_and_order() {
    let text = stdout(&["verify", "--id", "f-relations", "--order", "6"]);
    assert!(text.starts_with("PASS f-relations"), "{text}");
}

#[test]
fn symbolic_outputs() {
    assert_eq!(stdout(&["normal-order", "--system", "comm", "--word", "yx"]), "w(1,1) x y");
    assert_eq!(stdout(&["normal-order", "--system", "file", "--word", "yx"]), "w(1,1) x y + y");
    assert_eq!(stdout(&["weight", "--family", "generic", "--s", "2", "--t", "2", "--big"]), "w(2,1)*w(2,2)");
    assert_eq!(stdout(&["rook", "--board", "1,1", "--k", "1"]), "1 + w(1,1)");
    assert_eq!(stdout(&["file", "--board", "1,1", "--k", "2"]), "1");
}

#[test]
fn json_round_trips() {
    let nf: NormalForm = serde_json::from_str(&stdout(&["--json", "normal-order", "--system", "weyl", "--word", "yxyx"])).unwrap();
    assert_eq!(nf.len(), 3);
    let v: WeightValue = serde_json::from_str(&stdout(&["binom", "--json", "--family", "q", "--q", "0.5,0", "--n", "2", "--k", "1"])).unwrap();
    assert_eq!(v, WeightValue::Numeric(C64::new(1.5, 0.0)));
    let t: C64 = serde_json::from_str(&stdout(&["theta", "--json", "--x", "0.5,0", "--p", "0,0"])).unwrap();
    assert!((t - C64::new(0.5, 0.0)).norm() < 1e-15);
    let evaluated: serde_json::Value =
        serde_json::from_str(&stdout(&["normal-order", "--json", "--system", "weyl", "--word", "yx", "--family", "q", "--q", "2,0"])).unwrap();
    assert_eq!(evaluated["terms"][1]["coeff"], serde_json::json!([2.0, 0.0]));
}

#[test]
fn fibonacci_routes_agree() {
    let base = ["fib", "--n", "7", "--aq", "--a", "0.4,0.1", "--q", "0.6,0.2", "--json"];
    let rec: C64 = serde_json::from_str(&stdout(&base)).unwrap();
    let mut closed_args = base.to_vec();
    closed_args.push("--closed");
    let closed: C64 = serde_json::from_str(&stdout(&closed_args)).unwrap();
    assert!((rec - closed).norm() < 1e-10 * rec.norm());
}

#[test]
fn usage_and_domain_errors_exit_2() {
    for args in [
        &["theta", "--x", "abc", "--p", "0.1"][..],
        &["binom", "--family", "bq", "--n", "2", "--k", "1"],
        &["theta", "--x", "1,0", "--p", "1,0"],
        &["rook", "--board", "9", "--k", "1"],
        &["rook", "--board", "2,1", "--k", "1"],
        &["fib", "--n", "3", "--aq", "--elliptic"],
        &["verify", "--id", "no-such-check"],
        &["normal-order", "--system", "weyl", "--word", "xzy"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(!err.trim().is_empty(), "{args:?}");
    }
}
