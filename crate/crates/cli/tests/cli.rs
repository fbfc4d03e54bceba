use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn grasscat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grasscat"))
        .args(args)
        .env_remove("GRASSCAT_SEED")
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("grasscat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn category_suite_on_vf_passes() {
    let o = grasscat(&["check", "category", "--target", "vf", "--samples", "1000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("samples=1000"));
}

#[test]
fn groupoid_nerve_is_exact() {
    let o = grasscat(&["check", "nerve", "--target", "g", "--level", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    for c in r["checks"].as_array().unwrap() {
        assert_eq!(c["max_residual"], 0.0, "{c}");
    }
}

#[test]
fn mutated_semiring_fails_with_witness() {
    let o = grasscat(&["check", "semiring", "--target", "vff", "--m-max", "4", "--mutate", "compose", "--samples", "50", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    let failing: Vec<&Value> = r["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|c| c["witness"].is_object()));
}

#[test]
fn every_suite_passes_with_defaults() {
    for suite in ["category", "functor", "nat-trans", "nerve", "semiring", "stabilization"] {
        for target in ["vf", "vff", "g"] {
            let o = grasscat(&["check", suite, "--target", target, "--samples", "30", "--field", "complex"]);
            assert_eq!(o.status.code(), Some(0), "{suite} {target}: {}", stdout(&o));
        }
    }
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(grasscat(&["check", "category", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(grasscat(&["check", "category", "--m-max", "0"]).status.code(), Some(2));
    assert_eq!(grasscat(&["check", "category", "--eps-eq", "-1"]).status.code(), Some(2));
    assert_eq!(grasscat(&["check", "category", "--mutate", "component"]).status.code(), Some(2));
    assert_eq!(grasscat(&["check", "bogus"]).status.code(), Some(2));
    assert_eq!(grasscat(&["generate", "cocycle", "--base", "s2"]).status.code(), Some(2));
}

#[test]
fn seed_comes_from_the_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_grasscat"));
        c.args(args).env_remove("GRASSCAT_SEED");
        if let Some(s) = env {
            c.env("GRASSCAT_SEED", s);
        }
        c.output().unwrap().stdout
    };
    let flag = run(None, &["generate", "grpoint", "--seed", "9"]);
    let env = run(Some("9"), &["generate", "grpoint"]);
    let other = run(None, &["generate", "grpoint"]);
    assert_eq!(flag, env);
    assert_ne!(flag, other);
}

#[test]
fn shipped_moebius_classifies() {
    let o = grasscat(&["bundle", "classify", &data("moebius.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "orientation: moebius");
    let o = grasscat(&["bundle", "glue", &data("moebius.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let g: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(g["fiber_dim"], 1);
    assert_eq!(g["invariants"]["orientation"], "moebius");
}

#[test]
fn shipped_tautological_line_has_degree_one() {
    let o = grasscat(&["bundle", "classify", &data("tautological_s2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "degree: 1");
    assert_eq!(grasscat(&["bundle", "validate", &data("tautological_s2.json")]).status.code(), Some(0));
}

#[test]
fn malformed_input_exits_2() {
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{\"version\": 1, \"field\": ").unwrap();
    let o = grasscat(&["bundle", "validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("schema error"));
    let unversioned = tmp("unversioned.json");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(data("moebius.json")).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("version");
    std::fs::write(&unversioned, v.to_string()).unwrap();
    assert_eq!(grasscat(&["bundle", "validate", unversioned.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(grasscat(&["bundle", "validate", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn corrupted_cocycle_exits_1() {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(data("moebius.json")).unwrap()).unwrap();
    let entry = &mut v["transitions"][0][2];
    *entry = serde_json::to_value(
        entry.as_array().unwrap().iter().map(|row| row.as_array().unwrap().iter().map(|x| x.as_f64().unwrap() * 2.0).collect::<Vec<_>>()).collect::<Vec<_>>(),
    )
    .unwrap();
    let path = tmp("corrupt.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let o = grasscat(&["bundle", "validate", p, "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    let bad = r["checks"].as_array().unwrap().iter().find(|c| c["passed"] == false).unwrap();
    assert_eq!(bad["witness"]["overlap"], "U0→U1");
    assert_eq!(grasscat(&["bundle", "glue", p]).status.code(), Some(1));
    assert_eq!(grasscat(&["bundle", "classify", p]).status.code(), Some(1));
}

#[test]
fn generated_cocycles_validate() {
    let cases: &[&[&str]] = &[
        &["--base", "s1", "--rank", "1", "--seed", "3"],
        &["--base", "s1", "--rank", "2", "--orientation", "moebius", "--seed", "4"],
        &["--base", "s1", "--rank", "1", "--field", "complex", "--seed", "5"],
        &["--base", "s2", "--field", "complex", "--degree", "-2", "--seed", "6"],
        &["--base", "s2", "--field", "complex", "--rank", "2", "--seed", "7"],
        &["--base", "abstract", "--rank", "2", "--seed", "8"],
    ];
    for (i, extra) in cases.iter().enumerate() {
        let path = tmp(&format!("gen{i}.json"));
        let mut args = vec!["generate", "cocycle", "--output", path.to_str().unwrap()];
        args.extend_from_slice(extra);
        assert_eq!(grasscat(&args).status.code(), Some(0), "{extra:?}");
        let o = grasscat(&["bundle", "validate", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{extra:?}: {}", stdout(&o));
    }
}

#[test]
fn generated_classes_match_the_request() {
    let path = tmp("s2deg.json");
    let p = path.to_str().unwrap();
    grasscat(&["generate", "cocycle", "--base", "s2", "--field", "complex", "--degree", "-3", "--seed", "2", "--output", p]);
    assert_eq!(stdout(&grasscat(&["bundle", "classify", p])).trim(), "degree: -3");
    let path = tmp("s1m.json");
    let p = path.to_str().unwrap();
    grasscat(&["generate", "cocycle", "--base", "s1", "--orientation", "moebius", "--seed", "2", "--output", p]);
    assert_eq!(stdout(&grasscat(&["bundle", "classify", p])).trim(), "orientation: moebius");
}

#[test]
fn generation_is_deterministic() {
    for kind in ["grpoint", "morpoint", "cocycle"] {
        let a = grasscat(&["generate", kind, "--seed", "3"]);
        let b = grasscat(&["generate", kind, "--seed", "3"]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
    let a = grasscat(&["check", "semiring", "--samples", "20", "--seed", "5", "--format", "json"]);
    let b = grasscat(&["check", "semiring", "--samples", "20", "--seed", "5", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn generated_morpoint_satisfies_its_invariants() {
    let o = grasscat(&["generate", "morpoint", "--m", "5", "--k", "2", "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let f = grasscat::serial::morpoint_from_json::<f64>(&v, &grasscat::Tolerance::default()).unwrap();
    assert_eq!((f.src().ambient_dim(), f.src().sub_dim()), (5, 2));
    assert_eq!((f.dst().ambient_dim(), f.dst().sub_dim()), (5, 2));
}

#[test]
fn json_reports_round_trip() {
    let o = grasscat(&["check", "functor", "--samples", "20", "--format", "json"]);
    let r: grasscat::internal_cat::Report = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(serde_json::to_value(&r).unwrap(), serde_json::from_slice::<Value>(&o.stdout).unwrap());
}

#[test]
fn output_flag_writes_a_file() {
    let path = tmp("report.txt");
    let o = grasscat(&["check", "stabilization", "--samples", "10", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("result: pass"));
}
