use std::path::Path;
use std::process::{Command, Output};

use relcoh::states::{bell, state_to_json};

fn relcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relcoh")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn measure_bell_state() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bell.json", &state_to_json(bell().state(), Some((2, 2))));
    let out = relcoh(&["measure", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let c = &v["correlations"];
    assert!((c["discord_a"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert!((c["eof"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["reference"], "maximally_mixed");
}

#[test]
fn measure_writes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "mm.json", r#"{"dim": 2, "re": [[0.5, 0], [0, 0.5]]}"#);
    let out_path = dir.path().join("report.json");
    let out = relcoh(&["measure", &path, "--measure", "l1", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(v["rqc"]["l1"]["value"].as_f64(), Some(0.0));
    assert!(v["rqc"].get("relative_entropy").is_none());
}

#[test]
fn malformed_state_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.json", "{not json");
    assert_eq!(relcoh(&["measure", &path]).status.code(), Some(2));
    let path = write(dir.path(), "neg.json", r#"{"dim": 2, "re": [[1.5, 0], [0, -0.5]]}"#);
    assert_eq!(relcoh(&["measure", &path]).status.code(), Some(2));
}

#[test]
fn bad_sweep_configs_exit_2() {
    let base = ["sweep", "--dims", "3", "--seed", "1"];
    let zero = [&base[..], &["--check", "eq9_sum_rule", "--samples", "0"]].concat();
    assert_eq!(relcoh(&zero).status.code(), Some(2));
    let unknown = [&base[..], &["--check", "eq99", "--samples", "2"]].concat();
    assert_eq!(relcoh(&unknown).status.code(), Some(2));
    assert_eq!(relcoh(&["sweep", "--check", "eq9_sum_rule"]).status.code(), Some(2));
}

#[test]
fn sum_rule_sweep_passes_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out_path = dir.path().join(name);
        let out = relcoh(&[
            "sweep", "--check", "eq9_sum_rule", "--dims", "2,3", "--samples", "5", "--seed", "7", "--format",
            "csv", "--out", out_path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read_to_string(out_path).unwrap()
    };
    let a = run("a.csv");
    assert_eq!(a, run("b.csv"));
    assert_eq!(a.lines().count(), 11);
}

#[test]
fn evolve_emits_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "q.json", r#"{"dim": 2, "re": [[0.8535533905932737, 0.3535533905932738], [0.3535533905932738, 0.14644660940672624]]}"#);
    let out = relcoh(&["evolve", &path, "--channel", "dephasing", "--steps", "4", "--t-max", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    let out = relcoh(&["evolve", &path, "--channel", "teleport"]);
    assert_eq!(out.status.code(), Some(2));
}
