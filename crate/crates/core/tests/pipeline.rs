mod common;

use std::path::Path;

use common::{fixture, labeling, split};
use e7forge::lie::JacobiMode;
use e7forge::pipeline::*;
use e7forge::Error;
use serde_json::Value;

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn config(dir: &Path, commands: &[&str]) -> std::path::PathBuf {
    let lab = fixture("split.json");
    let body = serde_json::json!({ "labeling_path": lab.to_str().unwrap(), "commands": commands, "seed": 1 });
    write(dir, "cfg.json", &body.to_string())
}

#[test]
fn commands_round_trip_through_text() {
    for s in ["validate", "build", "verify-roots", "grade(Q)", "grade(H3)", "base-change(-1)", "formula-star", "d6a1", "schur"] {
        let c: Command = s.parse().unwrap();
        assert_eq!(c.to_string(), s);
    }
    assert!("grade(Q9)".parse::<Command>().is_err());
    assert!("base-change(4)".parse::<Command>().is_err());
    assert!("frobnicate".parse::<Command>().is_err());
}

#[test]
fn default_pipelines() {
    let split = default_commands(&labeling("split.json"));
    assert_eq!(split.first(), Some(&Command::Validate));
    assert!(split.contains(&Command::FormulaStar));
    assert!(!split.iter().any(|c| matches!(c, Command::BaseChange(_))));
    let ham = default_commands(&labeling("hamilton.json"));
    let bc = ham.iter().position(|c| *c == Command::BaseChange(-1)).unwrap();
    let roots = ham.iter().position(|c| *c == Command::VerifyRoots).unwrap();
    assert!(bc < roots);
}

#[test]
fn unknown_command_names_its_index() {
    let dir = tempfile::tempdir().unwrap();
    let p = config(dir.path(), &["validate", "bogus"]);
    match PipelineConfig::load(&p).unwrap_err() {
        Error::Schema { field, .. } => assert_eq!(field, "commands[1]"),
        e => panic!("{e:?}"),
    }
}

#[test]
fn misordered_commands_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = config(dir.path(), &["build", "lts"]);
    match PipelineConfig::load(&p).unwrap_err() {
        Error::Schema { field, msg } => {
            assert_eq!(field, "commands[1]");
            assert!(msg.contains("grade"), "{msg}");
        }
        e => panic!("{e:?}"),
    }
    let p = config(dir.path(), &["build", "base-change(-1)", "build"]);
    assert!(PipelineConfig::load(&p).is_err());
}

#[test]
fn unknown_config_field_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "cfg.json", r#"{"labeling_path": "x.json", "colour": 3}"#);
    assert!(matches!(PipelineConfig::load(&p), Err(Error::Schema { .. })));
}

#[test]
fn bare_labeling_gets_default_commands() {
    let cfg = PipelineConfig::load(&fixture("split.json")).unwrap();
    assert_eq!(cfg.commands, default_commands(&cfg.labeling));
    assert_eq!(cfg.seed, 1);
}

#[test]
fn bad_line_sum_is_a_config_failure() {
    let cfg = PipelineConfig::load(&fixture("bad_line_sum.json")).unwrap();
    let out = execute(&cfg);
    assert_eq!(out.exit_code, 1);
    let v = &out.reports[0];
    assert_eq!(v.check, "validate");
    assert!(v.witnesses.iter().any(|w| w.contains("L0")), "{:?}", v.witnesses);
}

#[test]
fn short_run_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = config(dir.path(), &["validate", "build", "verify-killing", "schur"]);
    let cfg = PipelineConfig::load(&p).unwrap();
    let (a, b) = (execute(&cfg), execute(&cfg));
    assert_eq!(a.exit_code, 0);
    let content = |o: &RunOutcome| o.reports.iter().map(|r| r.content()).collect::<Vec<Value>>();
    assert_eq!(content(&a), content(&b));
    assert_eq!(a.summary, b.summary);
    assert_eq!(a.summary["dim"], 133);
    assert!(a.reports.iter().all(|r| r.content().get("metadata").is_none()));

    let out = dir.path().join("out");
    write_outputs(&a, &out).unwrap();
    let summary: Value = serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["exit_code"], 0);
    assert!(out.join("01-build.json").exists());
}

#[test]
fn hamilton_base_change_then_roots() {
    let dir = tempfile::tempdir().unwrap();
    let lab = fixture("hamilton.json");
    let body = serde_json::json!({
        "labeling_path": lab.to_str().unwrap(),
        "commands": ["validate", "build", "base-change(-1)", "verify-roots"],
    });
    let cfg = PipelineConfig::load(&write(dir.path(), "cfg.json", &body.to_string())).unwrap();
    let out = execute(&cfg);
    assert_eq!(out.exit_code, 0, "{:?}", out.reports.iter().map(|r| (&r.check, &r.witnesses)).collect::<Vec<_>>());
    assert_eq!(out.summary["type"], "E7");
    assert_eq!(out.summary["roots"], 126);
    assert_eq!(out.reports[3].field, "Q(sqrt(-1))");
}

#[test]
fn golden_round_trip() {
    let a = split();
    let text = golden_json(a, 1);
    assert_eq!(text, golden_json(a, 1));
    let (alg, constants) = load_golden(&text).unwrap();
    assert_eq!(alg.dim(), 133);
    assert_eq!(constants, a.constants.table());
    assert!(alg.jacobi_check(JacobiMode::Full).passed());
    for i in 0..133 {
        for j in 0..133 {
            assert_eq!(alg.basis_bracket(i, j), a.algebra.basis_bracket(i, j));
        }
    }

    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("nested/golden.json");
    emit_golden(a, 1, &p).unwrap();
    assert_eq!(std::fs::read_to_string(&p).unwrap(), text);
}

#[test]
fn corrupted_golden_is_rejected() {
    let text = golden_json(split(), 1);
    let mut v: Value = serde_json::from_str(&text).unwrap();
    let entries = v["algebra"]["c"].as_array_mut().unwrap();
    let first = entries[0].clone();
    // add the mirror entry with the wrong sign
    let mut mirror = first.clone();
    mirror[0] = first[1].clone();
    mirror[1] = first[0].clone();
    entries.push(mirror);
    let err = load_golden(&v.to_string()).unwrap_err();
    match err {
        Error::Schema { field, msg } => {
            assert!(field.starts_with("c["), "{field}");
            assert!(msg.contains("antisymmetry"), "{msg}");
        }
        e => panic!("{e:?}"),
    }

    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["format"] = "something-else".into();
    assert!(load_golden(&v.to_string()).is_err());
}
