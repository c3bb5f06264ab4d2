use std::path::Path;
use std::process::{Command, Output};

use cornerscan::circle;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cornerscan")).args(args).output().expect("spawn cornerscan")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn solve_prints_six_digit_optimum() {
    let out = cli(&["solve", "--d", "40", "--tol", "1e-9"]);
    assert!(out.status.success());
    let s = stdout(&out);
    assert!(s.contains("c_opt = 2.001525"), "{s}");
    assert!(s.contains("scans = 18"), "{s}");
}

#[test]
fn solve_simulates_given_ratio() {
    let out = cli(&["solve", "--d", "40", "--c", "2.0015", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["sequence"]["status"], "Collapsed");
    assert!(v["c_opt"].is_null());
}

#[test]
fn solve_trajectory_roundtrips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("circle.json");
    let out = cli(&["solve", "--d", "4", "--trajectory-out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let verify = cli(&["verify", "--trajectory", path.to_str().unwrap(), "--format", "json"]);
    assert!(verify.status.success(), "{}", stderr(&verify));
    let cert: serde_json::Value = serde_json::from_slice(&verify.stdout).unwrap();
    let c_opt = circle::solve_optimal_c(4.0, 1e-9, 100_000).unwrap().c_opt;
    let worst = cert["worst_ratio"].as_f64().unwrap();
    assert!(worst <= c_opt + 2e-9 && worst >= c_opt - 1e-6, "{worst} vs {c_opt}");
}

#[test]
fn verify_direct_path() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.json", r#"{"d": 0.5, "points": [], "ends_at_corner": true}"#);
    let out = cli(&["verify", "--trajectory", &t]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("worst_ratio = 1.5"), "{}", stdout(&out));
}

#[test]
fn verify_open_trajectory_reports_infinity() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.json", r#"{"d": 2, "points": [[0.3, 1.5]], "ends_at_corner": false}"#);
    let out = cli(&["verify", "--trajectory", &t]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("worst_ratio = inf"));
    assert!(stdout(&out).contains("complete = false"));
}

#[test]
fn malformed_trajectory_exits_two_naming_field() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"points": [], "ends_at_corner": true}"#, "`d`"),
        (r#"{"d": 1, "points": [[0.5]], "ends_at_corner": true}"#, "points"),
        (r#"{"d": 1, "points": [[0.5, 1]], "ends_at_corner": "yes"}"#, "ends_at_corner"),
        (r#"{"d": 0, "points": [], "ends_at_corner": true}"#, "`d`"),
        (r#"{"d": 2, "points": [[0.5, 1], [0.2, 1]], "ends_at_corner": true}"#, "points[1].theta"),
        ("not json", "malformed"),
    ];
    for (i, (body, field)) in cases.iter().enumerate() {
        let t = write(dir.path(), &format!("bad{i}.json"), body);
        let out = cli(&["verify", "--trajectory", &t]);
        assert_eq!(out.status.code(), Some(2), "case {i}");
        assert!(stderr(&out).contains(field), "case {i}: {}", stderr(&out));
    }
}

#[test]
fn unknown_flag_exits_two() {
    assert_eq!(cli(&["solve", "--d", "1", "--bogus"]).status.code(), Some(2));
    assert_eq!(cli(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_two() {
    assert_eq!(cli(&["solve", "--d", "-1"]).status.code(), Some(2));
    assert_eq!(cli(&["curve", "--d-min", "5", "--d-max", "1"]).status.code(), Some(2));
    assert_eq!(cli(&["lowerbound", "--delta", "1.5"]).status.code(), Some(2));
    assert_eq!(cli(&["thresholds", "--format", "svg"]).status.code(), Some(2));
    assert_eq!(cli(&["optimize", "--d", "1", "--n", "1", "--restarts", "0"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_one() {
    let out = cli(&["thresholds", "--max-scans", "1", "--output", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn curve_csv_format() {
    let out = cli(&["curve", "--d-min", "1", "--d-max", "2", "--samples", "3"]);
    assert!(out.status.success());
    let s = stdout(&out);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "d,c_opt,n_scans,x1");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("1.00000000,1.83928676,1,0.839286755"), "{}", lines[1]);
}

#[test]
fn curve_output_is_byte_identical() {
    let args = ["curve", "--d-min", "0.5", "--d-max", "9", "--samples", "101"];
    assert_eq!(cli(&args).stdout, cli(&args).stdout);
}

fn polyline_vertices(svg: &str) -> Vec<(f64, f64)> {
    assert_eq!(svg.matches("<polyline").count(), 1);
    let pts = svg.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
    pts.split_whitespace()
        .map(|p| {
            let (x, y) = p.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect()
}

#[test]
fn svg_two_point_curve() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.svg");
    let out = cli(&["curve", "--d-min", "1", "--d-max", "2", "--samples", "2", "--format", "svg", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(polyline_vertices(&svg).len(), 2);
}

#[test]
fn svg_peak_sits_at_three_to_four_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.svg");
    let out = cli(&["curve", "--d-min", "0.1", "--d-max", "10", "--samples", "9901", "--format", "svg", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    let verts = polyline_vertices(&svg);
    assert_eq!(verts.len(), 9901);
    // smallest screen y is the largest ratio
    let (idx, _) = verts.iter().enumerate().min_by(|a, b| a.1 .1.total_cmp(&b.1 .1)).unwrap();
    let d = 0.1 + 9.9 * idx as f64 / 9900.0;
    assert!((d - 4.400875).abs() < 0.01, "peak plotted at d = {d}");
}

#[test]
fn svg_without_output_path_is_rejected() {
    let out = cli(&["curve", "--d-min", "1", "--d-max", "2", "--format", "svg"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lowerbound_and_asymptotics_render() {
    let out = cli(&["lowerbound", "--delta", "0.1,0.5", "--format", "csv"]);
    assert!(out.status.success());
    let s = stdout(&out);
    assert!(s.starts_with("delta,steps,violations,total_distance,distance_bound\n"));
    assert!(s.contains("0.100000000,3,0,1.95900000,10.0000000"), "{s}");

    let out = cli(&["asymptotics", "--epsilon", "0.1", "--n", "8", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "Found");
    assert_eq!(v["liftoff_ok"], true);
    assert_eq!(v["reached"], true);
}

#[test]
fn optimize_json_is_a_trajectory_document() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("opt.json");
    let out = cli(&["optimize", "--d", "1", "--n", "1", "--format", "json", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let c = v["c_achieved"].as_f64().unwrap();
    assert!((c - 1.808201).abs() < 1e-4);

    // the extra fields are not part of the trajectory schema
    let doc = serde_json::json!({"d": v["d"], "points": v["points"], "ends_at_corner": v["ends_at_corner"]});
    let traj = dir.path().join("traj.json");
    std::fs::write(&traj, doc.to_string()).unwrap();
    let verify = cli(&["verify", "--trajectory", traj.to_str().unwrap(), "--format", "json"]);
    assert!(verify.status.success());
    let cert: serde_json::Value = serde_json::from_slice(&verify.stdout).unwrap();
    assert!((cert["worst_ratio"].as_f64().unwrap() - c).abs() <= 1e-10);
}

#[test]
fn optimize_is_deterministic_for_a_seed() {
    let args = ["optimize", "--d", "2", "--n", "2", "--restarts", "4", "--seed", "7", "--format", "json"];
    assert_eq!(cli(&args).stdout, cli(&args).stdout);
}
