use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn walgebra(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_walgebra")).args(args).output().expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json)
}

/// Drop the fields that legitimately vary between runs.
fn stable(mut v: Value) -> Value {
    v.as_object_mut().expect("report object").remove("wall_time_ms");
    v
}

fn golden(name: &str, args: &[&str]) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    let want: Value = serde_json::from_str(&std::fs::read_to_string(&path).expect("fixture")).expect("fixture json");
    let (code, got) = walgebra(args);
    assert_eq!(code, 0);
    assert_eq!(stable(got), stable(want), "{name} drifted");
}

#[test]
fn miura_sl2_central_charge() {
    let (code, r) = walgebra(&["miura", "--n", "2", "--symbolic"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["central_charge"], "(-6k^2-11k-4)/(k+2)");
    assert_eq!(r["certificates"]["central_charge_formula"], true);
    assert_eq!(r["schema_version"], 1);
}

#[test]
fn golden_reports() {
    golden("miura_n2.json", &["miura", "--n", "2", "--symbolic"]);
    golden("characters_ising.json", &["characters", "--n", "2", "--p", "3", "--q", "4", "--order", "8", "--list-classes"]);
    golden("brst_sl2.json", &["brst", "--n", "2", "--weight-max", "4"]);
}

#[test]
fn report_round_trips() {
    let (_, r) = walgebra(&["characters", "--n", "2", "--p", "2", "--q", "3", "--order", "20"]);
    let text = serde_json::to_string(&r).unwrap();
    let again: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r, again);
    assert_eq!(serde_json::to_string(&again).unwrap(), text);
    assert_eq!(r["certificates"]["denominator_identity"], true);
}

#[test]
fn seeded_runs_are_deterministic() {
    let a = walgebra(&["vertex", "--trials", "5", "--seed", "7"]);
    let b = walgebra(&["vertex", "--trials", "5", "--seed", "7"]);
    assert_eq!(a.0, 0);
    assert_eq!(stable(a.1), stable(b.1));
}

#[test]
fn verify_all_quick() {
    let (code, r) = walgebra(&["verify-all", "--profile", "quick"]);
    assert_eq!(code, 0, "{r}");
    assert!(r["certificates"].as_object().unwrap().values().all(|v| v == true));
}

#[test]
fn usage_errors() {
    assert_eq!(walgebra(&["miura", "--n", "2", "--bogus"]).0, 2);
    assert_eq!(walgebra(&["nonsense"]).0, 2);
    // engine-level failure
    assert_eq!(walgebra(&["zhu", "--algebra", "no-such-preset"]).0, 1);
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("walgebra-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let (code, _) = walgebra(&["lie", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["payload"]["dim"], 3);
    std::fs::remove_dir_all(&dir).unwrap();
}
