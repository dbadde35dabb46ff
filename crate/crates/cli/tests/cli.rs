use std::path::PathBuf;
use std::process::Command;

use cmlattice::json;
use serde_json::{json, Value};

struct Run {
    status: String,
    code: i32,
    doc: Value,
}

/// Runs the binary and checks the output contract: a single JSON document
/// whose re-serialization parses back to the same value, and an exit code
/// determined by the status.
fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_cmlattice"))
        .arg("--json")
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let doc: Value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{stdout}"));
    let again: Value = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(doc, again);
    let status = doc["status"].as_str().unwrap().to_string();
    let code = out.status.code().unwrap();
    let expected = match status.as_str() {
        "ok" => 0,
        "error" => 2,
        "unknown" => 3,
        s => panic!("unexpected status {s}"),
    };
    assert_eq!(code, expected, "{args:?}: status {status}");
    assert!(doc["trace"].is_array());
    Run { status, code, doc }
}

fn temp_file(name: &str, contents: &Value) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents.to_string()).unwrap();
    path.to_string_lossy().into_owned()
}

fn diag_form(name: &str, entries: &[i64]) -> String {
    let n = entries.len();
    let rows: Vec<Value> = (0..n)
        .map(|i| {
            Value::Array(
                (0..n)
                    .map(|j| {
                        let x = if i == j { entries[i] } else { 0 };
                        json!([x.to_string(), "0"])
                    })
                    .collect(),
            )
        })
        .collect();
    temp_file(name, &json!({ "field": { "cyclotomic": 4 }, "entries": rows }))
}

#[test]
fn invariants_examples() {
    let r = run(&["invariants", "--form", &diag_form("h_11m1.json", &[1, 1, -1])]);
    assert_eq!(r.status, "ok");
    let p = &r.doc["payload"];
    assert_eq!((p["dim"].clone(), p["sigma"].clone(), p["det_class"].clone()), (json!(3), json!([1]), json!("-1")));

    let r = run(&["invariants", "--form", &diag_form("i2.json", &[1, 1])]);
    assert_eq!(r.doc["payload"]["sigma"], json!([2]));

    let r = run(&["invariants", "--form", &diag_form("h_2m3.json", &[2, -3])]);
    assert_eq!(r.doc["payload"]["det_class"], json!("-6"));
}

#[test]
fn admissible_examples() {
    let r = run(&["admissible", "--form", &diag_form("i3.json", &[1, 1, 1])]);
    assert_eq!(r.doc["payload"]["admissible"], json!(false));
    let r = run(&["admissible", "--form", &diag_form("adm.json", &[1, 1, -1])]);
    assert_eq!(r.doc["payload"]["admissible"], json!(true));
}

#[test]
fn equivalence_examples() {
    let a = diag_form("eq_a.json", &[1, 1, -1]);
    let b = diag_form("eq_b.json", &[2, 2, -1]);
    let c = diag_form("eq_c.json", &[1, 1, -3]);
    let r = run(&["equivalent", "--form", &a, &b]);
    assert_eq!(r.doc["payload"]["verdict"], json!("Equivalent"));
    let r = run(&["equivalent", "--form", &a, &c]);
    assert_eq!(r.doc["payload"]["verdict"], json!("NotEquivalent"));
}

#[test]
fn embed_first_type_output_reparses() {
    let r = run(&["embed-first-type", "Q8"]);
    assert_eq!(r.status, "ok");
    let p = &r.doc["payload"];
    assert_eq!(p["order"], json!(8));
    let form = json::form_from_json(&p["form"]).unwrap();
    assert!(form.is_admissible());
    assert_eq!(json::form_to_json(&form), p["form"]);
    let (field, gens) = json::generators_from_json(&p["group"]).unwrap();
    assert!(gens.iter().all(|g| form.is_invariant_under(g)));
    assert_eq!(json::generators_to_json(&field, &gens), p["group"]);

    let r = run(&["embed-first-type", "no-such-group"]);
    assert_eq!(r.code, 2);
}

#[test]
fn average_of_a_reflection() {
    let group = json!({
        "field": { "cyclotomic": 4 },
        "generators": [[[["1", "0"], ["1", "0"]], [["0", "0"], ["-1", "0"]]]],
    });
    let r = run(&["average", "--group", &temp_file("refl.json", &group)]);
    assert_eq!(r.doc["payload"]["order"], json!(2));
    let h = json::form_from_json(&r.doc["payload"]["form"]).unwrap();
    assert!(h.is_positive_definite());
}

#[test]
fn regular_embed_classes() {
    let group = temp_file("c3.json", &json!({ "cyclic": 3 }));
    for class in ["default", "other"] {
        let r = run(&["regular-embed", "--group", &group, "--n", "5", "--class", class]);
        assert_eq!(r.status, "ok");
        assert_eq!(r.doc["payload"]["admissible"], json!(true));
    }
    let r = run(&["regular-embed", "--group", &group, "--n", "5", "--class", "other"]);
    assert_eq!(r.doc["payload"]["equivalent_to_default"], json!("NotEquivalent"));
    let r = run(&["regular-embed", "--group", &group, "--n", "2"]);
    assert_eq!(r.code, 2);
}

#[test]
fn dgroup_commands() {
    let r = run(&["dgroup", "check", "m=7", "r=2", "p=3"]);
    assert_eq!(r.doc["payload"]["verdict"], json!("ExcludedByReducibility"));
    let r = run(&["dgroup", "check", "m=5", "r=1", "p=3"]);
    assert_eq!(r.doc["payload"]["verdict"], json!("CyclicPossible"));
    assert_eq!(r.doc["payload"]["order"], json!(5));
    let r = run(&["dgroup", "check", "m=7", "r=3"]);
    assert_eq!(r.doc["payload"]["verdict"], json!("ExcludedByAmitsur"));
    assert_eq!(run(&["dgroup", "check", "m=6", "r=2"]).code, 2);

    let r = run(&["dgroup", "enumerate", "--max-m", "10"]);
    let groups = r.doc["payload"]["groups"].as_array().unwrap();
    assert!(groups.iter().all(|g| g["order"].as_u64() == Some(g["m"].as_u64().unwrap() * g["n"].as_u64().unwrap())));

    let out = Command::new(env!("CARGO_BIN_EXE_cmlattice"))
        .args(["dgroup", "enumerate", "--max-m", "10", "--lines"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines, *groups);
    for key in ["m", "r", "s", "t", "n", "order", "cyclic", "verdict"] {
        assert!(lines.iter().all(|l| l.get(key).is_some()), "missing {key}");
    }
}

#[test]
fn algebra_commands() {
    let r = run(&["algebra", "check"]);
    assert_eq!(r.status, "ok");
    let spec = temp_file("algebra.json", &r.doc["payload"]["algebra"]);
    assert_eq!(run(&["algebra", "--spec", &spec, "check"]).status, "ok");

    let r = run(&["algebra", "norm", "--x", "X"]);
    assert_eq!(r.doc["payload"]["reduced_norm"], json!(["3/5", "2/5"]));
    for x in ["1", "-1"] {
        let r = run(&["algebra", "membership", "--x", x]);
        assert_eq!(r.doc["payload"]["lambda"], json!(["1", "0"]));
    }
    let r = run(&["algebra", "signature", "--h", "1"]);
    assert_eq!(r.doc["payload"]["signature_pairs"], json!([[3, 0], [3, 0], [3, 0]]));
    let r = run(&["algebra", "division", "--budget", "200"]);
    assert_eq!((r.status.as_str(), r.code), ("unknown", 3));
}

#[test]
fn norm_residue_statuses() {
    assert_eq!(run(&["norm-residue", "5"]).doc["payload"]["verdict"], json!("IsNorm"));
    assert_eq!(run(&["norm-residue", "3"]).doc["payload"]["verdict"], json!("IsNotNorm"));
    assert_eq!(run(&["norm-residue", "-1"]).doc["payload"]["verdict"], json!("IsNotNorm"));
}

#[test]
fn congruence_check_is_reproducible() {
    let form = diag_form("cc.json", &[1, 2, -5]);
    let a = run(&["congruence-check", "--form", &form, "--trials", "5", "--seed", "11"]);
    let b = run(&["congruence-check", "--form", &form, "--trials", "5", "--seed", "11"]);
    assert_eq!(a.status, "ok");
    assert_eq!(a.doc, b.doc);
}

#[test]
fn malformed_input_reports_position() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("broken.json");
    std::fs::write(&path, "{\"field\": {\"cyclotomic\": 4},\n \"entries\": [[").unwrap();
    let r = run(&["invariants", "--form", path.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    let msg = r.doc["payload"]["error"].as_str().unwrap();
    assert!(msg.contains("line 2"), "{msg}");

    let r = run(&["no-such-command"]);
    assert_eq!(r.code, 2);
}

#[test]
fn catalog_lists_required_groups() {
    let r = run(&["catalog"]);
    let names: Vec<&str> = r.doc["payload"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    for name in ["Q8", "2T", "2O", "2I"] {
        assert!(names.contains(&name), "{name}");
    }
}
