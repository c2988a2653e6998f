use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn catenoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catenoid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = catenoid(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn csv_rows(text: &str) -> Vec<(f64, f64)> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,value"));
    lines
        .map(|l| {
            let (a, v) = l.split_once(',').unwrap();
            (a.parse().unwrap(), v.parse().unwrap())
        })
        .collect()
}

#[test]
fn constants_json() {
    let c = json(&["constants", "--json"]);
    assert!((c["a_L"].as_f64().unwrap() - 0.847486).abs() < 1e-5);
    assert!((c["K"].as_f64().unwrap() - 0.40093).abs() < 5e-5);
    assert!((c["two_rho_ac"].as_f64().unwrap() - 1.00229).abs() < 1e-4);
}

#[test]
fn constants_text_is_aligned() {
    let text = stdout(&["constants"]);
    let names: Vec<&str> = text
        .lines()
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(
        names,
        ["K", "a_c", "2rho(a_c)", "a_0", "a_l", "a_L", "2rho(a_L)"]
    );
    let column: Vec<usize> = text.lines().map(|l| l.rfind(' ').unwrap()).collect();
    assert!(column.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn constants_agree_across_tolerances() {
    let coarse = json(&["--tol", "1e-6", "constants", "--json"]);
    let fine = json(&["--tol", "1e-8", "constants", "--json"]);
    for key in ["K", "a_c", "a_0", "a_l", "a_L", "two_rho_ac", "two_rho_aL"] {
        let (c, f) = (coarse[key].as_f64().unwrap(), fine[key].as_f64().unwrap());
        assert!((c - f).abs() < 1e-6, "{key}: {c} vs {f}");
    }
}

#[test]
fn rho_sweep_peaks_at_critical_neck() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rho.csv");
    let p = path.to_str().unwrap();
    stdout(&[
        "sweep",
        "--function",
        "rho",
        "--lo",
        "0.01",
        "--hi",
        "3",
        "--n",
        "300",
        "--out",
        p,
    ]);
    let first = fs::read(&path).unwrap();
    let rows = csv_rows(std::str::from_utf8(&first).unwrap());
    assert_eq!(rows.len(), 300);
    assert!(rows.windows(2).all(|w| w[1].0 > w[0].0));
    let peak = rows.iter().max_by(|x, y| x.1.total_cmp(&y.1)).unwrap();
    assert!((peak.0 - 0.49577).abs() < 1e-2);
    let top = rows.iter().position(|r| r == peak).unwrap();
    assert!(rows[..=top].windows(2).all(|w| w[1].1 > w[0].1));
    assert!(rows[top..].windows(2).all(|w| w[1].1 < w[0].1));

    assert!(!first.contains(&b'\r'));
    stdout(&[
        "sweep",
        "--function",
        "rho",
        "--lo",
        "0.01",
        "--hi",
        "3",
        "--n",
        "300",
        "--out",
        p,
    ]);
    assert_eq!(first, fs::read(&path).unwrap());
}

#[test]
fn phi_sweep_changes_sign_once() {
    let rows = csv_rows(&stdout(&[
        "sweep",
        "--function",
        "phi",
        "--lo",
        "0.01",
        "--hi",
        "0.9",
        "--n",
        "90",
    ]));
    let changes: Vec<usize> = (0..rows.len() - 1)
        .filter(|&i| (rows[i].1 > 0.0) != (rows[i + 1].1 > 0.0))
        .collect();
    assert_eq!(changes.len(), 1);
    assert!((rows[changes[0]].0 - 0.847486).abs() < 1e-2);
}

#[test]
fn two_point_sweep() {
    let rows = csv_rows(&stdout(&[
        "sweep",
        "--function",
        "rho",
        "--lo",
        "0.5",
        "--hi",
        "1",
        "--n",
        "2",
    ]));
    assert_eq!(rows.len(), 2);
    assert!(rows[0].0 < rows[1].0);
}

fn regimes(report: &Value) -> Vec<String> {
    report["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["regime"]["regime"].as_str().unwrap().to_owned())
        .collect()
}

#[test]
fn classify_distances() {
    let near = json(&["classify", "--distance", "0.8", "--json"]);
    assert_eq!(regimes(&near), ["Unstable", "AreaMinimizing"]);
    assert!(near["constants"]["a_L"].is_number());
    let mid = json(&["classify", "--distance", "0.95", "--json"]);
    assert_eq!(regimes(&mid), ["Unstable", "StableNotMinimizing"]);
    let critical = json(&["classify", "--distance", "1.00229", "--json"]);
    assert_eq!(critical["solutions"].as_array().unwrap().len(), 1);
}

#[test]
fn classify_circles() {
    let far = json(&["classify", "--circles", "0,0,1", "0,0,7.389056", "--json"]);
    assert!((far["separation"].as_f64().unwrap() - 2.0).abs() < 1e-6);
    assert!(far["solutions"].as_array().unwrap().is_empty());
    assert!(far["constants"]["two_rho_ac"].is_number());

    let shifted = json(&["classify", "--circles", "-3,0,1", "3,0,1", "--json"]);
    assert!(shifted["solutions"].as_array().unwrap().is_empty());
}

#[test]
fn classify_neck() {
    let r = json(&["classify", "--a", "0.6", "--json"]);
    assert_eq!(r["regime"]["regime"], "StableNotMinimizing");
    assert_eq!(
        json(&["classify", "--a", "0.3", "--json"])["regime"]["regime"],
        "Unstable"
    );
    assert_eq!(
        json(&["classify", "--a", "1.2", "--json"])["regime"]["regime"],
        "AreaMinimizing"
    );
}

#[test]
fn compete_reports_witness() {
    let r = json(&["compete", "--a", "0.6", "--r", "3", "--json"]);
    assert!(r["s"].as_f64().unwrap() > 0.0);
    assert!(r["margin"].as_f64().unwrap() > 0.0);
    assert!(json(&["compete", "--a", "1.0", "--r", "3", "--json"])["s"].is_null());
}

#[test]
fn catenary_csv() {
    let text = stdout(&["catenary", "--a", "0.6", "--y-max", "3", "--n", "16"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y"));
    let pts: Vec<(f64, f64)> = lines
        .map(|l| {
            let (x, y) = l.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect();
    assert_eq!(pts.len(), 16);
    assert_eq!(pts[0], (0.0, 0.6));
    assert!(pts.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 > w[0].1));
}

#[test]
fn mesh_obj_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.obj");
    stdout(&[
        "mesh",
        "--a",
        "0.6",
        "--y-max",
        "3",
        "--n-profile",
        "32",
        "--n-angle",
        "64",
        "--out",
        path.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(&path).unwrap();
    let vertices: Vec<[f64; 3]> = text
        .lines()
        .filter_map(|l| l.strip_prefix("v "))
        .map(|l| {
            let v: Vec<f64> = l.split_whitespace().map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect();
    let faces = text.lines().filter(|l| l.starts_with("f ")).count();
    assert_eq!(vertices.len(), 64 * 63);
    assert_eq!(faces, 2 * 62 * 64);
    assert!(vertices
        .iter()
        .all(|v| v[0] * v[0] + v[1] * v[1] + v[2] * v[2] < 1.0));
    // Mirror symmetry across the plane u = 0.
    let n = vertices.len();
    for (i, v) in vertices.iter().enumerate() {
        let w = vertices[n - 64 * (i / 64 + 1) + i % 64];
        assert!(
            (v[0] + w[0]).abs() < 1e-10
                && (v[1] - w[1]).abs() < 1e-10
                && (v[2] - w[2]).abs() < 1e-10
        );
    }
}

#[test]
fn exit_codes() {
    assert_eq!(catenoid(&["--help"]).status.code(), Some(0));
    assert_eq!(catenoid(&["--version"]).status.code(), Some(0));
    assert_eq!(catenoid(&["bogus"]).status.code(), Some(1));
    assert_eq!(catenoid(&["classify"]).status.code(), Some(1));
    assert_eq!(
        catenoid(&["classify", "--circles", "0,0,1", "0.5,0,1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        catenoid(&["classify", "--circles", "0,0,1", "0,0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        catenoid(&["sweep", "--function", "phi", "--lo", "1", "--hi", "0.5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        catenoid(&["mesh", "--a", "0.6", "--y-max", "3", "--n-angle", "2"])
            .status
            .code(),
        Some(1)
    );
    let numeric = catenoid(&[
        "--tol",
        "1e-300",
        "sweep",
        "--function",
        "rho",
        "--lo",
        "0.1",
        "--hi",
        "1",
        "--n",
        "3",
    ]);
    assert_eq!(numeric.status.code(), Some(2));
}
