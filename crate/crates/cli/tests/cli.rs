use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use fusionkit::burnside::{marks, Basis, BurnsideElement, Context, ElementJson};
use fusionkit::charidem::linear_solve;
use fusionkit::fusion::FusionSystem;
use fusionkit::group::FiniteGroup;
use fusionkit::lattice::sylow_subgroup;
use serde_json::{json, Value};
use tempfile::TempDir;

fn fusionkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fusionkit")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn write_json(dir: &TempDir, name: &str, value: &Value) -> String {
    let p = path(dir, name);
    fs::write(&p, serde_json::to_string_pretty(value).unwrap()).unwrap();
    p
}

fn s4_omega() -> BurnsideElement {
    let g = Arc::new(FiniteGroup::builtin("S4", 512).unwrap());
    let s = sylow_subgroup(&g, 2);
    linear_solve(&FusionSystem::from_group(&g, &s, 2).unwrap()).unwrap()
}

#[test]
fn verify_builtin_scenario_passes() {
    let dir = TempDir::new().unwrap();
    let report = path(&dir, "r.json");
    let out = fusionkit(&["verify", "s4-d8-a4", "--json", &report]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("s4-d8-a4 [ok]"));
    assert!(stdout.contains("elapsed"));
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["scenario"], json!("s4-d8-a4"));
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn negative_fixture_is_an_expected_pass() {
    let dir = TempDir::new().unwrap();
    let report = path(&dir, "r.json");
    let out = fusionkit(&["verify", "s4-d8-v4-negative", "--json", &report]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let checks = v["checks"].as_array().unwrap();
    for name in ["composition_product", "star_identity"] {
        let c = checks.iter().find(|c| c["check"] == json!(name)).unwrap();
        assert_eq!(c["value"], json!(false), "{name}");
        assert_eq!(c["expected"], json!(false), "{name}");
        assert_eq!(c["status"], json!("pass"), "{name}");
    }
}

fn negative_scenario(expect_cp: bool) -> Value {
    let d8 = json!([[1, 2, 3, 0], [2, 1, 0, 3]]);
    let v4 = json!([[1, 0, 3, 2], [2, 3, 0, 1]]);
    json!({
        "name": "negative-from-file",
        "p": 2,
        "ambient": {"builtin": "S4"},
        "sylow": {"permutations": d8},
        "T": {"permutations": v4},
        "H": "trivial",
        "K": "trivial",
        "checks": ["composition_product", "star_identity"],
        "expect": {"composition_product": expect_cp, "star_identity": false},
    })
}

#[test]
fn wrong_expectation_exits_one() {
    let dir = TempDir::new().unwrap();
    let ok = write_json(&dir, "ok.json", &negative_scenario(false));
    assert_eq!(code(&fusionkit(&["verify", &ok])), 0);
    let wrong = write_json(&dir, "wrong.json", &negative_scenario(true));
    let out = fusionkit(&["verify", &wrong]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAILED"));
}

#[test]
fn malformed_input_exits_two_without_report() {
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.json");
    fs::write(&bad, "{\"name\": \"x\", \"p\": ").unwrap();
    let report = path(&dir, "r.json");
    assert_eq!(code(&fusionkit(&["verify", &bad, "--json", &report])), 2);
    assert!(!Path::new(&report).exists());

    let unknown =
        write_json(&dir, "u.json", &json!({"name": "u", "p": 2, "ambient": {"builtin": "Monster"}, "checks": []}));
    assert_eq!(code(&fusionkit(&["verify", &unknown])), 2);
    assert_eq!(code(&fusionkit(&["verify", "no-such-scenario"])), 2);
    assert_eq!(code(&fusionkit(&["idempotent", "--ambient", "S4", "--p", "4"])), 2);
    assert_eq!(code(&fusionkit(&["--max-order", "10", "idempotent", "--ambient", "S4", "--p", "2"])), 2);
}

#[test]
fn catalog_reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    assert_eq!(code(&fusionkit(&["catalog", "--oracle", "--jobs", "2", "--json", &a])), 0);
    assert_eq!(code(&fusionkit(&["catalog", "--oracle", "--jobs", "1", "--json", &b])), 0);
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["reports"].as_array().unwrap().len(), 15);
}

#[test]
fn budget_overrun_exits_three() {
    assert_eq!(code(&fusionkit(&["--budget", "0", "catalog", "--oracle"])), 3);
}

#[test]
fn idempotent_file_round_trips_and_matches_library() {
    let dir = TempDir::new().unwrap();
    let w = path(&dir, "w.json");
    let out = fusionkit(&["idempotent", "--ambient", "S4", "--p", "2", "--out", &w]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&w).unwrap();
    let parsed: ElementJson = serde_json::from_str(&text).unwrap();
    let element = parsed.into_element(512).unwrap();
    let lib = s4_omega();
    assert_eq!(element.to_json_string(), lib.to_json_string());

    // ω ∘ ω = ω through the compose subcommand
    let out = fusionkit(&["compose", &w, &w]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), text);

    let spec = write_json(&dir, "s4.json", &json!({"builtin": "S4"}));
    let out = fusionkit(&["idempotent", "--ambient", &spec, "--p", "2", "--method", "power"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), text);
}

#[test]
fn compose_and_marks_match_library() {
    let dir = TempDir::new().unwrap();
    let g = Arc::new(FiniteGroup::builtin("D8", 512).unwrap());
    let ctx = Context::square(g, 2);
    let basis = Basis::new(&ctx, true);
    let x = BurnsideElement::basis(&ctx, basis.pairs()[3].clone());
    let y = BurnsideElement::basis(&ctx, basis.pairs()[basis.len() - 2].clone());
    let xp = path(&dir, "x.json");
    let yp = path(&dir, "y.json");
    fs::write(&xp, x.to_json_string()).unwrap();
    fs::write(&yp, y.to_json_string()).unwrap();

    let out = fusionkit(&["compose", &xp, &yp]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim_end(), x.compose(&y).unwrap().to_json_string());

    let table = path(&dir, "m.json");
    assert_eq!(code(&fusionkit(&["marks", &xp, "--json", &table])), 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(&table).unwrap()).unwrap();
    let full = Basis::new(&ctx, false);
    let expected = marks(&x, &full);
    let rows = v["marks"].as_array().unwrap();
    assert_eq!(rows.len(), full.len());
    for (row, m) in rows.iter().zip(expected) {
        assert_eq!(row["mark"]["num"].as_i64().unwrap().to_string(), m.numer().to_string());
        assert_eq!(row["mark"]["den"], json!(1));
    }

    // composing across mismatched contexts is an input error
    let c2 = Context::square(Arc::new(FiniteGroup::builtin("C2", 512).unwrap()), 2);
    let zp = path(&dir, "z.json");
    fs::write(&zp, BurnsideElement::identity(&c2).unwrap().to_json_string()).unwrap();
    assert_eq!(code(&fusionkit(&["compose", &xp, &zp])), 2);
}

#[test]
fn decompose_regular_biset() {
    let dir = TempDir::new().unwrap();
    // C2 acting on itself from both sides is [C2, id]
    let file = write_json(
        &dir,
        "b.json",
        &json!({"G": {"builtin": "C2"}, "H": {"builtin": "C2"}, "p": 2, "left": [[0, 1], [1, 0]], "right": [[0, 1], [1, 0]]}),
    );
    let out = fusionkit(&["decompose", &file]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let c2 = Context::square(Arc::new(FiniteGroup::builtin("C2", 512).unwrap()), 2);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim_end(),
        BurnsideElement::identity(&c2).unwrap().to_json_string()
    );

    // a trivial left action is not free
    let bad = write_json(
        &dir,
        "bad.json",
        &json!({"G": {"builtin": "C2"}, "H": {"builtin": "C2"}, "p": 2, "left": [[0], [0]], "right": [[0, 0]]}),
    );
    assert_eq!(code(&fusionkit(&["decompose", &bad])), 2);
}
