//! The command-line tool and the identity registry, exercised from outside the crate.

use std::collections::BTreeSet;
use std::process::Command;

use lsmahler::mpcore::make_context;
use lsmahler::verify::{run_suite, IdentityKind, Registry, Report, Status, SuiteOptions};

fn lsmahler(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_lsmahler")).args(args).output().expect("binary runs");
    (o.status.code().unwrap_or(-1), String::from_utf8(o.stdout).unwrap(), String::from_utf8(o.stderr).unwrap())
}

#[test]
fn verify_single_identity_as_json() {
    let (code, out, _) = lsmahler(&["verify", "--id", "ls-pi-n4", "--json"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let r = &v["reports"][0];
    for key in ["id", "status", "lhs", "rhs", "abs_diff", "digits", "elapsed_seconds", "anchor"] {
        assert!(r.get(key).is_some(), "missing {key} in {r}");
    }
    assert_eq!(r["status"], "verified");
    assert_eq!(r["digits"], 20);
    assert!(r["lhs"].as_str().unwrap().starts_with("5.66455970424461839"));
    let report: Report = serde_json::from_value(r.clone()).unwrap();
    assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
}

#[test]
fn disproof_entry_passes_as_refuted() {
    let (code, out, _) = lsmahler(&["--json", "verify", "--id", "mu2-1pxy-disproof"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["reports"][0]["status"], "refuted");
    let d: f64 = v["reports"][0]["abs_diff"].as_str().unwrap().parse().unwrap();
    assert!((d - 0.4945).abs() < 5e-4, "{d}");
}

#[test]
fn eval_subcommands() {
    let (code, out, _) = lsmahler(&["eval", "ls", "--n", "5", "--k", "1", "--sigma", "pi", "--digits", "30"]);
    assert_eq!(code, 0);
    assert!(out.contains("Lambda(5)") && out.contains("-4.94072081777017388713956329"), "{out}");
    let (code, out, _) = lsmahler(&["eval", "mahler", "--family", "mu-k-1pxy-star", "--k", "4", "--digits", "25"]);
    assert_eq!(code, 0);
    assert!(out.contains("6*Pi^-1*GlPi3(4,1) - 1/4860*Pi^4"), "{out}");
    let (code, out, _) = lsmahler(&["--json", "eval", "clausen", "--a", "2", "--theta", "pi/3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["value"].as_str().unwrap().starts_with("1.01494160640965362"), "{out}");
    let (code, out, _) = lsmahler(&["--json", "eval", "polylog", "--a", "2", "--z", "1/2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["value"].as_str().unwrap().starts_with("5.82240526465012505"), "{out}");
    let (code, out, _) = lsmahler(&["--json", "eval", "walk", "--n", "3", "--s", "4"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["value"].as_str().unwrap().starts_with("15.0000000000"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(lsmahler(&["--help"]).0, 0);
    assert_eq!(lsmahler(&["bogus"]).0, 2);
    assert_eq!(lsmahler(&["verify", "--id", "no-such-identity"]).0, 2);
    assert_eq!(lsmahler(&["eval", "ls", "--n", "3", "--sigma", "banana"]).0, 2);
    assert_eq!(lsmahler(&["verify", "--suite", "no-such-tag"]).0, 2);
}

#[test]
fn list_shows_every_identity() {
    let (code, out, _) = lsmahler(&["--json", "list"]);
    assert_eq!(code, 0);
    let listed: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    let reg = Registry::builtin().unwrap();
    assert_eq!(listed.len(), reg.identities.len());
    let ids: BTreeSet<&str> = listed.iter().map(|v| v["id"].as_str().unwrap()).collect();
    assert_eq!(ids.len(), reg.identities.len());
}

#[test]
fn registry_cross_reference_is_exhaustive() {
    let reg = Registry::builtin().unwrap();
    assert!(reg.uncovered_topics().is_empty(), "{:?}", reg.uncovered_topics());
    let anchors: BTreeSet<&str> = reg.cross_reference().into_iter().map(|(_, a)| a).collect();
    let topics: BTreeSet<&str> = reg.topics.iter().map(String::as_str).collect();
    assert_eq!(anchors, topics);
    for family in ["ls-pi-n", "ls-pi3-table-n", "mu-k-1pxy-star-k", "decay-k"] {
        assert!(reg.identities.iter().any(|i| i.id.starts_with(family)), "{family}");
    }
    for id in ["mu2-1pxy-disproof", "parseval-cl2", "rv-five-term", "rv-six-term", "mu2-1pxyz-li4-form"] {
        reg.get(id).unwrap();
    }
}

#[test]
fn statuses_follow_tolerances() {
    let reg = Registry::builtin().unwrap();
    let ctx = make_context(20).unwrap();
    let suite = run_suite("section-2", &ctx, &SuiteOptions::default()).unwrap();
    assert!(suite.summary.total > 20);
    for r in &suite.reports {
        let identity = reg.get(&r.id).unwrap();
        let tol = identity.tolerance.tolerance(r.digits);
        let d: f64 = r.abs_diff.parse().unwrap();
        match identity.kind {
            IdentityKind::ExactVsOracle | IdentityKind::OracleVsOracle | IdentityKind::Conjecture => {
                assert_eq!(r.status == Status::Verified, d <= tol, "{r:?}");
            }
            IdentityKind::RefutedExpected => assert_eq!(r.status, Status::Refuted),
            IdentityKind::Inequality | IdentityKind::Symbolic => assert_ne!(r.status, Status::Mismatch),
        }
        if r.status == Status::Refuted {
            assert!(matches!(identity.kind, IdentityKind::RefutedExpected | IdentityKind::Inequality));
        }
    }
    assert_eq!(suite.exit_code(), 0);
}

#[test]
fn conjectures_only_on_request() {
    let ctx = make_context(10).unwrap();
    let default = run_suite("conjecture", &ctx, &SuiteOptions::default()).unwrap();
    assert_eq!(default.summary.total, 0);
    let (code, _, err) = lsmahler(&["verify", "--suite", "conjecture"]);
    assert_eq!(code, 2, "{err}");
}
