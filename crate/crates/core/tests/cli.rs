use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pseudogeo::scene::{load_scene, parse_scene, scene_to_json};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pseudogeo"));
    c.env_remove("PSEUDOGEO_TOL");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const MIXED: &str = r#"{
  "dimension": 2,
  "epsilon": 0.25,
  "bounds": [[-4, -4], [4, 4]],
  "charges": [
    { "position": [0, 0], "omega": ["pi", "2pi"] },
    { "position": [2, 2], "omega": ["9pi", "-0.5pi"] }
  ],
  "rays": [
    { "origin": [-3, -3], "direction": [1, 1] },
    { "origin": [-3, 1], "direction": [2, 0.5] }
  ]
}"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["trace"]).status.code(), Some(2));
    assert_eq!(run(&["nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["tangent", "--n", "2", "--euclidean", "3"])
            .status
            .code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent.json");
    assert_eq!(
        run(&["detect", "--scene", missing.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"dimension": 2, "bounds": [[0,0],[1,1]]}"#,
    );
    let o = run(&["detect", "--scene", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing key `epsilon`"));
}

#[test]
fn detect_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "mixed.json", MIXED);
    let o = run(&["detect", "--scene", &p]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("SmarandacheManifold"), "{s}");
    assert!(s.contains("MixedEuclideanNonEuclidean"), "{s}");
    assert!(s.contains("Smarandache plane geometry"), "{s}");

    let o = run(&["detect", "--scene", &p, "--smoothness", "inf"]);
    let s = stdout(&o);
    assert!(
        s.contains("smooth differential Smarandache manifold"),
        "{s}"
    );
    assert!(s.contains("declarative only"), "{s}");

    let o = run(&["--json", "detect", "--scene", &p]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "SmarandacheManifold");
}

#[test]
fn tangent_dimension() {
    let s = stdout(&run(&["tangent", "--n", "2", "--euclidean", "1"]));
    assert!(s.contains("dim = 3"), "{s}");
    let s = stdout(&run(&["cotangent", "--omega", "pi,2pi,3pi"]));
    assert!(s.contains("dim = 5"), "{s}");
    assert!(s.contains("{dx2, d⁻x1, d⁺x1, d⁻x3, d⁺x3}"), "{s}");
}

#[test]
fn loader_reduces_pi_literals() {
    let loaded = parse_scene(MIXED).unwrap();
    let w = loaded.scene.charges()[1].omega.components();
    assert!((w[0] - PI).abs() < 1e-12);
    assert!((w[1] - 3.5 * PI).abs() < 1e-12);
    let d = &loaded.rays[1].direction;
    assert!((d[0].hypot(d[1]) - 1.0).abs() < 1e-15);

    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "mixed.json", MIXED);
    let o = run(&["--json", "classify", "--scene", &p]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[1]["class"], serde_json::json!(["Elliptic", "Hyperbolic"]));
}

#[test]
fn scene_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = load_scene(write(dir.path(), "a.json", MIXED)).unwrap();
    let again = load_scene(write(
        dir.path(),
        "b.json",
        &scene_to_json(&first.scene, &first.rays),
    ))
    .unwrap();
    assert_eq!(first, again);
}

#[test]
fn trace_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "mixed.json", MIXED);
    let mut outputs = Vec::new();
    for i in 0..3 {
        let csv = dir.path().join(format!("t{i}.csv"));
        let svg = dir.path().join(format!("t{i}.svg"));
        let o = run(&[
            "trace",
            "--scene",
            &p,
            "--csv",
            csv.to_str().unwrap(),
            "--svg",
            svg.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        outputs.push((fs::read(csv).unwrap(), fs::read(svg).unwrap(), o.stdout));
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    let csv = String::from_utf8(outputs[0].0.clone()).unwrap();
    assert!(csv.starts_with("ray_id,segment,x1,x2,theta1,theta2,event_charge\n"));
}

#[test]
fn svg_rejects_three_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "cube.json",
        r#"{"dimension": 3, "epsilon": 0.1, "bounds": [[-1,-1,-1],[1,1,1]],
            "rays": [{"origin": [0,0,0], "direction": [1,0,0]}]}"#,
    );
    let svg = dir.path().join("out.svg");
    let o = run(&["trace", "--scene", &p, "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2-dimensional"));
}

#[test]
fn tolerance_override() {
    let o = bin()
        .args(["normcheck", "--norm", "euclidean"])
        .env("PSEUDOGEO_TOL", "nonsense")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin()
        .args(["normcheck", "--norm", "euclidean"])
        .env("PSEUDOGEO_TOL", "1e-6")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("tol 1.0e-6"), "{}", stdout(&o));
}

#[test]
fn reports_checks() {
    let o = run(&["normcheck", "--norm", "quartic-mean"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("classification: Finsler"));
    let o = run(&[
        "kahler",
        "--field",
        "fubini-study",
        "--n",
        "2",
        "--points",
        "2",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = run(&["parallels", "--omega", "pi,2pi", "--axis", "1"]);
    assert!(stdout(&o).contains("infinitely many"), "{}", stdout(&o));
}
