use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn lisa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lisa")).args(args).env_remove("LISA_THREADS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn heisenberg_fixture_reports_the_inequality() {
    let o = lisa(&["fixtures", "heisenberg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0_{[x,y]} != 0_{x+y}: confirmed"), "{}", stdout(&o));
}

#[test]
fn pend_carrier_passes_its_suites() {
    let f = fixture("pend_f2_2.json");
    for suite in ["isv", "naisa"] {
        let o = lisa(&["check-carrier", path(&f), "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).contains("29 elements"));
    }
}

#[test]
fn composition_is_not_a_lie_bracket() {
    let o = lisa(&["check-carrier", path(&fixture("pend_f2_2.json")), "--suite", "lie"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn jacobson_extension_fails_as_expected() {
    let o = lisa(&["extend", path(&fixture("jacobson_p3.json"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("homomorphism: fail (expected)"));

    let o = lisa(&["--json", "extend", path(&fixture("jacobson_p3.json"))]);
    let v = json_of(&o);
    let hom = v["sections"].as_array().unwrap().iter().find(|s| s["name"] == "extension.homomorphism").unwrap();
    assert_eq!(hom["status"], "fail (expected)");
}

#[test]
fn jacobson_emit_matches_the_shipped_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("j.json");
    let o = lisa(&["fixtures", "jacobson", "--p", "3", "--emit", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fail (expected)"));
    let emitted: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    let shipped: Value = serde_json::from_str(&std::fs::read_to_string(fixture("jacobson_p3.json")).unwrap()).unwrap();
    assert_eq!(emitted, shipped);
}

#[test]
fn strong_partial_action_extends_to_a_homomorphism() {
    let o = lisa(&["extend", path(&fixture("idempotent_action.json"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("homomorphism: pass"));
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(lisa(&["extend", bad.to_str().unwrap()]).status.code(), Some(2));

    std::fs::write(&bad, r#"{"schema": "lisa/9", "carrier": "pend", "field": "F2", "dim": 2}"#).unwrap();
    assert_eq!(lisa(&["check-carrier", bad.to_str().unwrap(), "--suite", "isv"]).status.code(), Some(2));

    std::fs::write(&bad, r#"{"carrier": "pend", "field": "F4", "dim": 2}"#).unwrap();
    assert_eq!(lisa(&["check-carrier", bad.to_str().unwrap(), "--suite", "isv"]).status.code(), Some(2));

    assert_eq!(lisa(&["check-algebra", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn json_report_embeds_schema_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let f = fixture("el_heisenberg_q.json");
    let o = lisa(&["--json", "--seed", "7", "--trials", "40", "--out", out.to_str().unwrap(), "check-carrier", path(&f), "--suite", "lie"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["schema"], "lisa/1");
    assert_eq!(v["command"], "check-carrier");
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["config"]["trials"], 40);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(written, v);
}

#[test]
fn sampled_reports_replay_identically() {
    let f = fixture("el_heisenberg_q.json");
    let args = ["--json", "--seed", "11", "--trials", "60", "check-carrier", path(&f), "--suite", "naisa"];
    let first = json_of(&lisa(&args));
    let second = json_of(&lisa(&args));
    assert_eq!(first["sections"], second["sections"]);
    assert_eq!(serde_json::to_string(&first["sections"]).unwrap(), serde_json::to_string(&second["sections"]).unwrap());
}

#[test]
fn thread_hint_does_not_change_verdicts() {
    let f = fixture("el_heisenberg_q.json");
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_lisa"))
            .args(["--json", "--seed", "3", "--trials", "60", "check-carrier", path(&f), "--suite", "lie"])
            .env("LISA_THREADS", threads)
            .output()
            .unwrap();
        json_of(&o)
    };
    let (one, four) = (run("1"), run("4"));
    assert_eq!(one["sections"], four["sections"]);
    assert_eq!(one["config"]["threads"], 1);
}

#[test]
fn build_el_counts_and_checks() {
    let o = lisa(&["build-el", path(&fixture("abelian3_f2.json"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("E(L) has 51 elements"));
}

#[test]
fn build_el_field_override_reinterprets_constants() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("h.json");
    std::fs::write(
        &alg,
        r#"{"field": "F5", "dim": 3, "flavor": "lie", "products": [
            {"i": 0, "j": 1, "out": [[2, "1"]]}, {"i": 1, "j": 0, "out": [[2, "-1"]]}]}"#,
    )
    .unwrap();
    let o = lisa(&["--json", "build-el", alg.to_str().unwrap(), "--field", "F3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json_of(&o);
    assert_eq!(v["config"]["field"], "F3");
    assert_eq!(v["sections"][0]["report"]["elements"], 1 + 13 * 3 + 13 * 9 + 27);
}

#[test]
fn equivalence_on_a_subspace_representation() {
    let o = lisa(&["verify-equivalence", path(&fixture("subspace_rep_line_f3.json")), path(&fixture("el_line_f3.json"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn equivalence_rejects_a_carrier_that_is_not_f_inverse() {
    let o = lisa(&["verify-equivalence", path(&fixture("subspace_rep_line_f3.json")), path(&fixture("pend_f2_2.json"))]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn adjunction_into_heisenberg() {
    let o = lisa(&["verify-adjunction", path(&fixture("line_f3.json")), path(&fixture("subspace_rep_heisenberg_f3.json"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("27 Lie homomorphisms, 27 representation morphisms"));
}

#[test]
fn fixtures_for_actions_and_partial_functions() {
    for name in ["idempotent-action", "partial-functions"] {
        let o = lisa(&["fixtures", name]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
}

#[test]
fn suite_runs_a_single_criterion() {
    let o = lisa(&["suite", "--criterion", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("criterion  3 [PASS]"));
    assert_eq!(lisa(&["suite", "--criterion", "11"]).status.code(), Some(2));
}
