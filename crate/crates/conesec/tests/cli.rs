use std::path::PathBuf;
use std::process::Command as Process;

use conesec::{run, Command, Format, RunConfig};
use serde_json::Value;

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_conesec"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn status(args: &[&str]) -> i32 {
    bin().args(args).output().unwrap().status.code().unwrap()
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let out = bin().args(args).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    (out.status.code().unwrap(), serde_json::from_str(&text).unwrap_or(Value::Null))
}

#[test]
fn gruenbaum_on_the_simplex_exits_zero() {
    let (code, report) = json_of(&["check", "gruenbaum", "--body", "simplex", "--n", "3", "--dirs", "100", "--seed", "1"]);
    assert_eq!(code, 0);
    assert_eq!(report["summary"]["records"], 100);
    assert_eq!(report["summary"]["failed"], 0);
    assert_eq!(report["config"]["seed"], 1);
    assert!(report["version"].is_string() && report["wall_clock_seconds"].is_number());
}

#[test]
fn remark1_report_carries_the_ratio() {
    let (code, report) = json_of(&["experiment", "remark1", "--n", "4", "--l", "2"]);
    assert_eq!(code, 0);
    let rec = &report["records"][0];
    assert!((rec["lhs"].as_f64().unwrap() - 0.16).abs() < 1e-9);
    assert!((rec["rhs"].as_f64().unwrap() - 0.16).abs() < 1e-15);
}

#[test]
fn ci_body_writes_one_record_per_direction() {
    let path = scratch("ci.json");
    let code = status(&["ci-body", "--body", "simplex", "--n", "3", "--dirs", "32", "--seed", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let dirs = report["data"]["directions"].as_array().unwrap();
    assert_eq!(dirs.len(), 32);
    for d in dirs {
        assert!(d["ci_radius"].as_f64().unwrap() <= d["i_radius"].as_f64().unwrap());
        assert_eq!(d["certified"], true);
    }
    let upper = report["records"].as_array().unwrap().iter().filter(|r| r["name"] == "ci_upper_inclusion").count();
    assert_eq!(upper, 32);
}

#[test]
fn reruns_are_byte_identical_apart_from_timing() {
    for command in [Command::CiBody, Command::Volume, Command::IntersectionBody] {
        let mut cfg = RunConfig::new(command);
        cfg.body = "random".into();
        cfg.n = 3;
        cfg.dirs = 6;
        cfg.seed = 11;
        cfg.samples = Some(5000);
        let a = run(&cfg).unwrap();
        let b = run(&cfg).unwrap();
        assert_eq!(a.body_json().unwrap(), b.body_json().unwrap());
    }
}

#[test]
fn record_order_does_not_depend_on_threads() {
    let mut cfg = RunConfig::new(Command::Corpus);
    cfg.only = vec!["convex".into(), "experiments".into()];
    let one = run(&cfg).unwrap();
    cfg.jobs = 3;
    let three = run(&cfg).unwrap();
    assert!(one.summary.records > 100);
    assert_eq!(one.records, three.records);
    assert_eq!(one.exit_code(), 0);
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(status(&["check", "nonsense"]), 2);
    assert_eq!(status(&["experiment", "nonsense"]), 2);
    assert_eq!(status(&["volume", "--body", "/does/not/exist.json"]), 2);
    assert_eq!(status(&["volume", "--n", "0"]), 2);
    assert_eq!(status(&["volume", "--n", "three"]), 2);
    assert_eq!(status(&["corpus", "--only", "nonsense"]), 2);
    assert_eq!(status(&["section", "--k", "2", "--offset", "0.1"]), 2);
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"type\": \"vpolytope\", \"vertices\": [[0, 0], [1, 0]], \"extra\": 1}").unwrap();
    assert_eq!(status(&["volume", "--body", bad.to_str().unwrap()]), 2);
    let cone = scratch("skew_cone.json");
    std::fs::write(&cone, r#"{"generators": [[0, 0, 1]], "flat_basis": [[1, 0, 0], [0.6, 0.8, 0]]}"#).unwrap();
    assert_eq!(status(&["cone-volume", "--n", "3", "--cone", cone.to_str().unwrap()]), 2);
    assert_eq!(status(&["--help"]), 0);
}

#[test]
fn failed_checks_exit_one() {
    // an off-centre triangle fails the centring precondition inside the batch
    let manifest = scratch("offcentre.json");
    std::fs::write(
        &manifest,
        r#"{"name": "offcentre", "seed": 1, "directions": 4, "ci_directions": 2, "max_dim_heavy": 2,
            "max_dim_functions": 2,
            "bodies": [{"type": "vpolytope", "vertices": [[0.2, 0.1], [1.2, 0.1], [0.2, 1.1]]}],
            "experiments": {}}"#,
    )
    .unwrap();
    let out = bin().args(["corpus", "--only", "gruenbaum", "--corpus", manifest.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["records"][0]["notes"].as_str().unwrap().starts_with("error:"));
    assert!(report["records"][0]["lhs"].is_null());
}

#[test]
fn corpus_path_from_the_environment() {
    let manifest = scratch("tiny.json");
    std::fs::write(
        &manifest,
        r#"{"name": "tiny", "seed": 3, "directions": 3, "ci_directions": 2, "max_dim_heavy": 3,
            "max_dim_functions": 3,
            "bodies": [{"type": "cube", "n": 3}, {"type": "random", "n": 3, "seed": 9}],
            "experiments": {"remark3": [2]}}"#,
    )
    .unwrap();
    let out = bin().args(["corpus"]).env("CONESEC_CORPUS", &manifest).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["data"]["corpus"], "tiny");
    let names: Vec<&str> = report["records"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    for want in ["gruenbaum", "theorem_part1", "lemma5", "ci_upper_inclusion", "remark3"] {
        assert!(names.iter().any(|n| n.starts_with(want)), "missing {want} in {names:?}");
    }
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn csv_tables_and_record_rows() {
    let out = bin().args(["experiment", "remark2", "--n", "2", "--format", "csv"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("half_angle,toward_vertex,toward_facet,ratio"));
    assert_eq!(lines.count(), 5);

    let out = bin().args(["check", "lemma5", "--body", "cube", "--n", "3", "--format", "csv"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "name,body,n,k,p,lhs,rhs,ratio,passed");
    assert!(rows[1].starts_with("lemma5,cube(n=3),") && rows[1].ends_with(",true"), "{}", rows[1]);
}

#[test]
fn body_and_cone_files() {
    let body = scratch("triangle.json");
    let third = 1.0 / 3.0;
    std::fs::write(
        &body,
        serde_json::json!({"type": "vpolytope", "vertices": [[-third, -third], [2.0 * third, -third], [-third, 2.0 * third]]}).to_string(),
    )
    .unwrap();
    let (code, report) = json_of(&["volume", "--body", body.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!((report["data"]["volume"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(report["records"][0]["body"], "vpolytope(n=2,vertices=3)");

    let square = scratch("square.json");
    std::fs::write(
        &square,
        r#"{"type": "hpolytope", "halfspaces": [{"a": [1, 0], "b": 1}, {"a": [-1, 0], "b": 1}, {"a": [0, 1], "b": 1}, {"a": [0, -1], "b": 1}]}"#,
    )
    .unwrap();
    let quadrant = scratch("quadrant.json");
    std::fs::write(&quadrant, r#"{"generators": [[1, 0], [0, 1]]}"#).unwrap();
    let (code, report) = json_of(&["cone-volume", "--body", square.to_str().unwrap(), "--cone", quadrant.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!((report["data"]["polyhedral"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((report["data"]["radial"].as_f64().unwrap() - 1.0).abs() < 1e-6);

    // unit disc section of the 3-ball by a plane through the centre
    let ball = scratch("ball.json");
    std::fs::write(&ball, r#"{"type": "ball", "center": [0, 0, 0], "radius": 1}"#).unwrap();
    let (code, report) = json_of(&["section", "--body", ball.to_str().unwrap(), "--k", "1"]);
    assert_eq!(code, 0);
    assert!((report["data"]["volume"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-9);
}

#[test]
fn every_named_check_runs() {
    for name in conesec::checks::CHECKS {
        let mut cfg = RunConfig::new(Command::Check);
        cfg.name = Some(name.to_string());
        cfg.body = "cube".into();
        cfg.n = 3;
        cfg.dirs = 3;
        let report = run(&cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(report.summary.records > 0, "{name}");
        assert_eq!(report.exit_code(), 0, "{name}: {:?}", report.records);
    }
    for name in conesec::commands::EXPERIMENTS {
        let mut cfg = RunConfig::new(Command::Experiment);
        cfg.name = Some(name.to_string());
        cfg.n = 4;
        cfg.trials = 2;
        let report = run(&cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(report.exit_code(), 0, "{name}");
    }
}

#[test]
fn monte_carlo_volume_is_reported_with_its_error() {
    let mut cfg = RunConfig::new(Command::Volume);
    cfg.body = "cross".into();
    cfg.n = 3;
    cfg.samples = Some(40_000);
    cfg.format = Format::Json;
    let report = run(&cfg).unwrap();
    let data = report.data.as_ref().unwrap();
    assert!((data["volume"].as_f64().unwrap() - 4.0 / 3.0).abs() < 1e-12);
    let sigma = data["monte_carlo"]["std_error"].as_f64().unwrap();
    assert!(sigma > 0.0 && sigma < 0.05);
    assert_eq!(report.records.len(), 2);
}
