use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn e7forge(args: &[&str], threads: Option<&str>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_e7forge"));
    c.args(args);
    if let Some(t) = threads {
        c.env("E7FORGE_THREADS", t);
    }
    c.output().unwrap()
}

fn run(config: &Path, out: &Path, threads: Option<&str>) -> Output {
    e7forge(&["run", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()], threads)
}

fn summary(out: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap()
}

#[test]
fn split_default_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&fixture("split.json"), dir.path(), None);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(o.status.code(), Some(0), "{stdout}");
    let s = summary(dir.path());
    assert_eq!(s["dim"], 133);
    assert_eq!(s["roots"], 126);
    assert_eq!(s["type"], "E7");
    assert_eq!(s["formula_star"], "exact");
    assert_eq!(s["gauge"]["t"], "1");
    assert_eq!(s["exit_code"], 0);
    assert!(stdout.contains("formula-star"));
}

#[test]
fn bad_line_sum_exits_one_and_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&fixture("bad_line_sum.json"), dir.path(), None);
    assert_eq!(o.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("L0"), "{stdout}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("00-validate.json")).unwrap()).unwrap();
    assert_eq!(v["status"], "fail");
}

#[test]
fn hamilton_base_change_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let body = serde_json::json!({
        "labeling_path": fixture("hamilton.json").to_str().unwrap(),
        "commands": ["validate", "build", "verify-killing", "base-change(-1)", "verify-roots"],
        "output_dir": "reports",
    });
    std::fs::write(&cfg, body.to_string()).unwrap();
    let o = e7forge(&["run", "--config", cfg.to_str().unwrap()], Some("1"));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let s = summary(&dir.path().join("reports"));
    assert_eq!(s["type"], "E7");
    assert_eq!(s["roots"], 126);
}

#[test]
fn misordered_config_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let body = serde_json::json!({ "labeling_path": fixture("split.json").to_str().unwrap(), "commands": ["build", "gift"] });
    std::fs::write(&cfg, body.to_string()).unwrap();
    let o = e7forge(&["run", "--config", cfg.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("commands[1]"));
}

#[test]
fn golden_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let cfg = fixture("split.json");
    for (p, threads) in [(&a, None), (&b, Some("1"))] {
        let o = e7forge(&["golden", "--config", cfg.to_str().unwrap(), "--out", p.to_str().unwrap()], threads);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let v: Value = serde_json::from_slice(&x).unwrap();
    assert_eq!(v["algebra"]["dim"], 133);
}
