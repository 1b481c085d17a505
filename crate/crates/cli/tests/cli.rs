use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hyperflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperflow")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn run_into(scenario: &str, dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["run", scenario, "--out", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    hyperflow(&args)
}

#[test]
fn circle_window_is_ln2() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_into("circle_h2", dir.path(), &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let w = json(&dir.path().join("window.json"));
    let t = w["t"].as_f64().unwrap();
    assert!((t - 2f64.ln()).abs() < 1e-9);
    assert_eq!(w["grid"]["clipped"], true);
    let end = w["grid"]["end"].as_f64().unwrap();
    assert!((end - (t - 1e-9)).abs() < 1e-15);
}

#[test]
fn tube_window_is_quarter_ln3() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run_into("tube_h3", dir.path(), &[])), 0);
    let w = json(&dir.path().join("window.json"));
    assert!((w["t"].as_f64().unwrap() - 3f64.ln() / 4.0).abs() < 1e-9);
    assert!((w["t_dprime"].as_f64().unwrap() - 0.5).abs() < 1e-9);
}

#[test]
fn ambient_is_stationary_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run_into("ambient_h3", dir.path(), &[])), 0);
    let mut rdr = csv::Reader::from_path(dir.path().join("trajectory.csv")).unwrap();
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), ["sample_id", "t", "x_1", "x_2", "x_3", "x_4"]);
    let mut first: std::collections::HashMap<String, Vec<String>> = Default::default();
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let coords: Vec<String> = rec.iter().skip(2).map(str::to_string).collect();
        let prev = first.entry(rec[0].to_string()).or_insert_with(|| coords.clone());
        assert_eq!(*prev, coords);
    }
    let report = json(&dir.path().join("invariants.json"));
    assert_eq!(report["overall_pass"], true);
    assert!(json(&dir.path().join("window.json"))["t"].is_null());
}

#[test]
fn ball_csv_has_one_column_less() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run_into("horocycle_h2", dir.path(), &[])), 0);
    let mut rdr = csv::Reader::from_path(dir.path().join("ball.csv")).unwrap();
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["sample_id", "t", "y_1", "y_2"]);
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let n2: f64 = rec.iter().skip(2).map(|v| v.parse::<f64>().unwrap().powi(2)).sum();
        assert!(n2 < 1.0);
    }
}

#[test]
fn outputs_are_deterministic() {
    let (a, b, c) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for (dir, seed) in [(&a, "5"), (&b, "5"), (&c, "6")] {
        assert_eq!(code(&run_into("geodesic_sphere_h3", dir.path(), &["--seed", seed])), 0);
    }
    for file in ["trajectory.csv", "ball.csv", "window.json", "limits.json", "invariants.json"] {
        let x = std::fs::read(a.path().join(file)).unwrap();
        assert_eq!(x, std::fs::read(b.path().join(file)).unwrap(), "{file}");
    }
    assert_ne!(
        std::fs::read(a.path().join("trajectory.csv")).unwrap(),
        std::fs::read(c.path().join("trajectory.csv")).unwrap()
    );
}

#[test]
fn verify_circle_passes() {
    let o = hyperflow(&["verify", "circle_h2"]);
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for expected in ["norm_law", "gauge_round_trip", "pde_residual_hyperbolic", "isoparametric_spread", "limit_consistency_backward"] {
        assert!(names.contains(&expected), "{expected}");
    }
}

#[test]
fn verify_horocycle_records_ideal_point() {
    let dir = tempfile::tempdir().unwrap();
    let o = hyperflow(&["verify", "horocycle_h2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let limits = json(&dir.path().join("limits.json"));
    assert_eq!(limits["forward"]["kind"], "ideal_point");
    let p: Vec<f64> = limits["forward"]["point"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert!((p[0] + 1.0).abs() < 1e-5 && p[1].abs() < 1e-5);
}

#[test]
fn corrupted_flow_scale_fails_norm_law() {
    let o = hyperflow(&["verify", "circle_h2", "--inject-flow-scale", "1.001"]);
    assert_eq!(code(&o), 3);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    let norm = report["checks"].as_array().unwrap().iter().find(|c| c["name"] == "norm_law").unwrap();
    assert_eq!(norm["pass"], false);
    assert_eq!(report["overall_pass"], false);
}

#[test]
fn tight_tolerances_fail() {
    let o = hyperflow(&["verify", "circle_h2", "--tolerance-scale", "1e-12"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn invalid_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("broken.json", "{"),
        ("empty_ambient.json", r#"{"descriptor": {"type": "ambient", "m": 0, "r": 1}}"#),
        ("steps.json", r#"{"descriptor": {"type": "catalog", "name": "circle_h2"}, "time_grid": {"start": 0, "end": 1, "steps": 1}}"#),
        ("unknown.json", r#"{"descriptor": {"type": "catalog", "name": "circle_h2"}, "colour": "red"}"#),
        ("past_collapse.json", r#"{"descriptor": {"type": "catalog", "name": "circle_h2"}, "time_grid": {"start": 1, "end": 2, "steps": 3}}"#),
        ("no_clip.json", r#"{"descriptor": {"type": "catalog", "name": "circle_h2"}, "time_grid": {"start": 0, "end": 1, "steps": 3, "clip_to_existence": false}}"#),
        ("empty_umbilic.json", r#"{"descriptor": {"type": "umbilic", "xi": [0, 0, 1], "a": 0.5, "inner": {"type": "point", "direction": [1, 0]}}}"#),
    ];
    for (name, text) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        let o = hyperflow(&["run", path.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
        assert_eq!(code(&o), 2, "{name}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn missing_file_exits_4() {
    assert_eq!(code(&hyperflow(&["run", "/nonexistent/scenario.json"])), 4);
}

#[test]
fn catalog_writes_runnable_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    let o = hyperflow(&["catalog", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let listing: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(listing.as_array().unwrap().len(), 8);
    let file = dir.path().join("clifford_tube_h5.json");
    let scenario = json(&file);
    assert_eq!(scenario["descriptor"]["type"], "full_product");
    let out = dir.path().join("out");
    let o = hyperflow(&["limits", file.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&out.join("limits.json"))["backward"]["dim"], 3);
}

#[test]
fn explicit_frame_moves_ball_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("boosted.json");
    std::fs::write(
        &path,
        r#"{
            "descriptor": {"type": "catalog", "name": "circle_h2"},
            "time_grid": {"start": 0, "end": 0.5, "steps": 2},
            "sampling": {"per_dim": 2, "seed": 1},
            "outputs": ["ball"],
            "frame": {"explicit": [[1.25, 0, 0.75], [0, 1, 0], [0.75, 0, 1.25]]}
        }"#,
    )
    .unwrap();
    assert_eq!(code(&run_into(path.to_str().unwrap(), dir.path(), &[])), 0);
    assert!(dir.path().join("ball.csv").exists());
    assert!(!dir.path().join("trajectory.csv").exists());
    let mut rdr = csv::Reader::from_path(dir.path().join("ball.csv")).unwrap();
    let rows: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
}

#[test]
fn thread_cap_is_read_from_the_environment() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_hyperflow"))
            .args(["catalog"])
            .env("HYPERFLOW_THREADS", v)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("1")), 0);
    assert_eq!(code(&run("zero")), 2);
}
