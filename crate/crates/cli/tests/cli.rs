use std::path::{Path, PathBuf};
use std::process::Command;

use contextuality_cli::report::{Problem, ProblemKind};
use contextuality_cli::scenario::Mode;
use contextuality_cli::{parse_scenario, run_report, Report, RunOptions, Section};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_contextuality"))
}

const BASE: &str = r#"{
  "schema_version": 1,
  "name": "t",
  "modulus": 2,
  "qudits": 2,
  "labels": ["X1", "X2", "X1X2", "Z1"],
  "e0": ["X1X2"],
  "chi": [0]
}"#;

fn with(edit: impl FnOnce(&mut Value)) -> String {
    let mut v: Value = serde_json::from_str(BASE).unwrap();
    edit(&mut v);
    serde_json::to_string_pretty(&v).unwrap()
}

fn violations(text: &str) -> Vec<String> {
    parse_scenario(text).err().unwrap_or_default().iter().map(|v| v.to_string()).collect()
}

#[test]
fn base_parses() {
    let sc = parse_scenario(BASE).unwrap();
    assert_eq!(sc.label_names().len(), 4);
    assert_eq!(sc.e0, vec![2]);
}

#[test]
fn unknown_field_is_rejected() {
    let v = violations(&with(|v| v["colour"] = "red".into()));
    assert!(v[0].contains("unknown field"), "{v:?}");
    assert!(v[0].starts_with("line "), "{v:?}");
}

#[test]
fn anticommuting_context_is_rejected() {
    let v = violations(&with(|v| v["contexts"] = serde_json::json!([["X1", "Z1"]])));
    assert!(v.iter().any(|m| m.contains("non-commuting")), "{v:?}");
    assert!(v[0].starts_with("line "), "{v:?}");
}

#[test]
fn e0_outside_e_is_rejected() {
    let v = violations(&with(|v| v["e0"] = serde_json::json!(["Z2"])));
    assert!(v.iter().any(|m| m.contains("not in E")), "{v:?}");
}

#[test]
fn bad_label_syntax() {
    let v = violations(&with(|v| v["labels"][0] = "Q1".into()));
    assert!(v.iter().any(|m| m.contains("Q1")), "{v:?}");
}

#[test]
fn digits_must_match_the_modulus() {
    let v = violations(&with(|v| v["labels"][0] = "(2,0|0,0)".into()));
    assert!(v.iter().any(|m| m.contains("below d")), "{v:?}");
}

#[test]
fn chi_must_cover_e0() {
    let v = violations(&with(|v| v["chi"] = serde_json::json!([0, 1])));
    assert!(v.iter().any(|m| m.contains("χ has 2 values")), "{v:?}");
}

#[test]
fn e0_may_not_span_a_face() {
    let v = violations(&with(|v| {
        v["e0"] = serde_json::json!(["X1", "X2", "X1X2"]);
        v["chi"] = serde_json::json!([0, 0, 0]);
    }));
    assert!(v.iter().any(|m| m.contains("spans a face")), "{v:?}");
}

#[test]
fn unsupported_schema_version() {
    let v = violations(&with(|v| v["schema_version"] = 2.into()));
    assert!(v[0].contains("schema_version"), "{v:?}");
}

#[test]
fn mixtures_must_name_earlier_states() {
    let v = violations(&with(|v| {
        v["states"] = serde_json::json!([{"name": "m", "kind": "mixture", "lambda": "1/2", "first": "a", "second": "b"}]);
    }));
    assert!(v.iter().any(|m| m.contains("earlier states")), "{v:?}");
}

#[test]
fn schema_error_exits_with_2() {
    let dir = std::env::temp_dir().join(format!("ctx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, with(|v| v["colour"] = "red".into())).unwrap();
    let out = bin().args(["validate", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown field"));
}

#[test]
fn assignment_cap_exits_with_3() {
    let path = fixture("mermin_star_sd.json");
    let out = bin()
        .args(["fraction", path.to_str().unwrap(), "--cap-assignments", "100"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["errors"][0]["module"], "fraction");
    assert_eq!(v["errors"][0]["kind"], "cap");
}

#[test]
fn invariant_failures_dominate() {
    let mut r = Report {
        json: Value::Null,
        summary: Vec::new(),
        problems: Vec::new(),
    };
    assert_eq!(r.exit_code(), 0);
    for (kind, code) in [(ProblemKind::Error, 0), (ProblemKind::Cap, 3), (ProblemKind::Invariant, 4)] {
        r.problems.push(Problem {
            module: "x",
            kind,
            message: String::new(),
        });
        assert_eq!(r.exit_code(), code);
    }
}

#[test]
fn output_flag_writes_json_and_prints_summary() {
    let dir = std::env::temp_dir().join(format!("ctx-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("report.json");
    let path = fixture("mermin_star_si.json");
    let out = bin()
        .args(["cohomology", path.to_str().unwrap(), "--output", out_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("[β] ≠ 0"), "{stdout}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["cohomology"]["beta"]["trivial"], false);
    assert!(v.get("witness").is_none());
}

#[test]
fn float_mode_reports_numbers() {
    let sc = parse_scenario(&std::fs::read_to_string(fixture("mermin_star_sd.json")).unwrap()).unwrap();
    let mut opts = RunOptions::from_scenario(&sc);
    opts.mode = Mode::Float;
    let r = run_report(&sc, &[Section::Witness], &opts);
    let states = r.json["witness"]["states"].as_array().unwrap();
    let p = states[1]["p_chi"].as_f64().unwrap();
    assert!((p - 0.5).abs() < 1e-12);
    assert_eq!(states[0]["parity"]["verdict"], "contextual");
}

#[test]
fn abstract_algebra_scenario() {
    // A triangle of symbols with one face carrying β = 1.
    let text = r#"{
      "schema_version": 1,
      "name": "abstract",
      "modulus": 2,
      "abstract": {
        "symbols": ["a", "b", "c"],
        "faces": [["a", "b", "c", 1], ["b", "a", "c", 0]],
        "commuting": [["a", "b"]]
      },
      "e0": ["c"],
      "chi": [1]
    }"#;
    let sc = parse_scenario(text).unwrap();
    let r = run_report(&sc, &[Section::Complex, Section::Cohomology, Section::Assignments], &RunOptions::from_scenario(&sc));
    assert!(r.problems.is_empty(), "{:?}", r.problems);
    assert_eq!(r.json["complex"]["faces"], 2);
    assert!(r.json["assignments"]["lambda"]["size"].is_u64());
}
