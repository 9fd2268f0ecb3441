use std::collections::HashSet;

use ellweyl::verify::{list_identities, lookup, run_check, CheckKind, CheckOptions, CheckReport};
use ellweyl::Error;

const REQUIRED: &[&str] = &[
    "theta-inversion", "theta-quasiperiod", "theta-addition", "weight-shift", "bigweight-closed-vs-product",
    "binom-recursion-closed", "binom-limit-chain", "aq-symmetry", "aq-recurrences", "wdep-binomial-thm",
    "elliptic-binomial-thm", "prop-product-expansion", "bq-binomial-thm", "bq-reversal", "bq-finite-product",
    "bq-cauchy", "aq-cauchy", "qexp-cauchy", "qexp-braiding", "f-relations", "pincherle", "pincherle-k", "fib-genfun",
    "fib-aq-closed", "lemma-xeta-power", "normalorder-rook", "normalorder-file", "rook-product", "file-product",
    "gr-q-degeneration", "chebyshev-weight",
];

#[test]
fn registry_contains_required_ids() {
    let ids: HashSet<_> = list_identities().iter().map(|c| c.id).collect();
    assert!(ids.len() >= 31);
    assert_eq!(ids.len(), list_identities().len(), "ids are unique");
    for id in REQUIRED {
        assert!(ids.contains(id), "missing {id}");
    }
}

#[test]
fn lookup_reports_kinds() {
    assert_eq!(lookup("pincherle").unwrap().kind, CheckKind::NumericSampled);
    assert_eq!(lookup("normalorder-rook").unwrap().kind, CheckKind::ExactSymbolic);
    assert_eq!(lookup("wdep-binomial-thm").unwrap().kind, CheckKind::ExactSymbolic);
    assert!(matches!(lookup("no-such-identity"), Err(Error::UnknownId(_))));
    assert!(run_check("no-such-identity", 42, &CheckOptions::default()).is_err());
}

#[test]
fn sides_use_disjoint_routes() {
    for c in list_identities() {
        assert!(!c.lhs_route.is_empty() && !c.rhs_route.is_empty(), "{} lacks a route", c.id);
        for r in c.lhs_route {
            assert!(!c.rhs_route.contains(r), "{} uses {r} on both sides", c.id);
        }
    }
}

#[test]
fn tolerances_are_sane() {
    for c in list_identities() {
        match c.kind {
            CheckKind::ExactSymbolic => assert_eq!(c.tolerance, 0.0, "{}", c.id),
            CheckKind::NumericSampled => assert!(c.tolerance > 0.0 && c.tolerance <= 1e-7, "{}", c.id),
        }
    }
}

fn without_time(mut r: CheckReport) -> CheckReport {
    r.elapsed_ms = 0;
    r
}

#[test]
fn runs_are_deterministic() {
    let opts = CheckOptions { draws: Some(20), ..Default::default() };
    for id in ["theta-addition", "elliptic-binomial-thm", "pincherle"] {
        let a = without_time(run_check(id, 42, &opts).unwrap());
        let b = without_time(run_check(id, 42, &opts).unwrap());
        assert_eq!(a, b);
        assert!(a.pass, "{a:?}");
        let c = run_check(id, 43, &opts).unwrap();
        assert_ne!(a.samples, c.samples);
    }
}

#[test]
fn sizes_can_be_overridden() {
    let small = run_check("theta-inversion", 1, &CheckOptions { draws: Some(5), ..Default::default() }).unwrap();
    assert_eq!(small.trials, 5);
    assert_eq!(small.samples.len(), 5);
    // an absurd tolerance makes a passing check fail
    let strict = run_check("theta-quasiperiod", 1, &CheckOptions { draws: Some(50), tolerance: Some(1e-300), ..Default::default() }).unwrap();
    assert!(!strict.pass);
}

#[test]
fn report_json_round_trip() {
    let report = run_check("bq-reversal", 42, &CheckOptions::default()).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    for key in ["\"id\"", "\"trials\"", "\"failures\"", "\"max_rel_err\"", "\"seed\"", "\"elapsed_ms\"", "\"pass\"", "\"samples\""] {
        assert!(text.contains(key), "{key}");
    }
    let back: CheckReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    let listed = serde_json::to_value(list_identities()).unwrap();
    assert_eq!(listed[0]["kind"], "numeric-sampled");
}
