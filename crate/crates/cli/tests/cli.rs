use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const ROUND: &str =
    r#"{"dim": 2, "terms": [{"coef": 1.0, "exps": [2, 0]}, {"coef": 1.0, "exps": [0, 2]}]}"#;
const ONE_2D: &str = r#"{"dim": 2, "terms": [{"coef": 1.0, "exps": [0, 0]}]}"#;
const SQUARE_1D: &str = r#"{"dim": 1, "terms": [{"coef": 1.0, "exps": [2]}]}"#;
const ONE_1D: &str = r#"{"dim": 1, "terms": [{"coef": 1.0, "exps": [0]}]}"#;
const QUARTIC: &str = r#"{"dim": 2, "terms": [{"coef": 1.0, "exps": [4, 0]}, {"coef": 1.0, "exps": [0, 4]}, {"coef": -1.925, "exps": [2, 2]}]}"#;

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sublevel"))
        .args(args)
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn integrate_disc_against_monte_carlo() {
    let files = Files::new();
    let p = files.write(
        "disc.json",
        &format!(r#"{{"dim": 2, "f": {ONE_2D}, "g": {ROUND}, "y": 1.0}}"#),
    );
    let out: Value =
        serde_json::from_str(&ok(&["integrate", "--input", p.to_str().unwrap()])).unwrap();
    let row = &out[0];
    let v_dual = row["v_dual"].as_f64().unwrap();
    assert!((v_dual - PI).abs() < 1e-10);
    let mc = row["v_direct_mc"].as_f64().unwrap();
    let se = row["mc_std_error"].as_f64().unwrap();
    assert!(
        (v_dual - mc).abs() <= 4.0 * se,
        "dual {v_dual} mc {mc} ± {se}"
    );
    assert_eq!(row["method"], "dual-gaussian");
    assert_eq!(row["certificates"].as_array().unwrap().len(), 1);
}

#[test]
fn integrate_simplex_closed_form() {
    let files = Files::new();
    let p = files.write(
        "s.json",
        r#"{"simplex": true, "alpha_terms": [{"coef": 1.0, "alpha": [1.0, 0.0]}], "y": 1}"#,
    );
    let text = ok(&[
        "integrate",
        "--input",
        p.to_str().unwrap(),
        "--output",
        "csv",
    ]);
    let (header, rows) = csv_rows(&text);
    let v = header.iter().position(|h| h == "v_dual").unwrap();
    let m = header.iter().position(|h| h == "method").unwrap();
    assert!((num(&rows[0][v]) - 1.0 / 6.0).abs() < 1e-15);
    assert!(rows[0][m].starts_with("closed-form"));
}

#[test]
fn integrate_signed_polynomial_with_lower_bound() {
    // f = x² - 1 ≥ -1 on the interval: ∫_{-1}^{1} (x² - 1) = -4/3
    let files = Files::new();
    let f = r#"{"dim": 1, "terms": [{"coef": 1.0, "exps": [2]}, {"coef": -1.0, "exps": [0]}]}"#;
    let p = files.write(
        "t.json",
        &format!(r#"{{"f": {f}, "g": {SQUARE_1D}, "y": 1, "tau": -1}}"#),
    );
    let out: Value =
        serde_json::from_str(&ok(&["integrate", "--input", p.to_str().unwrap()])).unwrap();
    assert!((out[0]["v_dual"].as_f64().unwrap() + 4.0 / 3.0).abs() < 1e-9);
    assert!(out[0]["lambda_y"].is_null());
}

#[test]
fn schema_errors_exit_two() {
    let files = Files::new();
    let cases = [
        ("bad.json", "{not json".to_string()),
        (
            "unknown.json",
            format!(r#"{{"g": {ROUND}, "y": 1, "extra": 0}}"#),
        ),
        (
            "spec.json",
            format!(r#"{{"g": {ROUND}, "y": 1, "quadrature": {{"nodes": 4}}}}"#),
        ),
        ("nog.json", r#"{"y": 1}"#.to_string()),
        ("negy.json", format!(r#"{{"g": {ROUND}, "y": -1}}"#)),
    ];
    for (name, text) in cases {
        let p = files.write(name, &text);
        let out = run(&["integrate", "--input", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(out.stdout.is_empty(), "{name} printed output");
    }
    assert_eq!(
        run(&["integrate", "--input", "/nonexistent/p.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["integrate"]).status.code(), Some(2));
}

#[test]
fn engine_errors_exit_three() {
    let files = Files::new();
    // x² - y² has no bounded sublevel sets
    let saddle =
        r#"{"dim": 2, "terms": [{"coef": 1.0, "exps": [2, 0]}, {"coef": -1.0, "exps": [0, 2]}]}"#;
    let p = files.write("saddle.json", &format!(r#"{{"g": {saddle}, "y": 1}}"#));
    let out = run(&["integrate", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unbounded"));

    let disc = files.write("disc.json", &format!(r#"{{"g": {ROUND}}}"#));
    let out = run(&[
        "find-lambda",
        "--input",
        disc.to_str().unwrap(),
        "--target",
        "1e9",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sweep_disc_rows() {
    let files = Files::new();
    let p = files.write(
        "disc.json",
        &format!(r#"{{"g": {ROUND}, "y_grid": [0.5, 1, 2]}}"#),
    );
    let text = ok(&["sweep", "--input", p.to_str().unwrap()]);
    assert!(!text.contains('\r'));
    let (header, rows) = csv_rows(&text);
    assert_eq!(
        header.join(","),
        "y,lambda_y,v_dual,v_direct_mc,v_direct_boxindicator,rel_diff_dual_vs_mc,method,seed"
    );
    let products: Vec<f64> = rows.iter().map(|r| num(&r[0]) * num(&r[1])).collect();
    for (row, y) in rows.iter().zip([0.5, 1.0, 2.0]) {
        assert!((num(&row[2]) - PI * y).abs() < 1e-10 * PI * y);
        assert_eq!(row[7], "0");
    }
    for p in &products {
        assert!((p - products[0]).abs() <= 1e-12 * products[0]);
    }
}

#[test]
fn sweep_quartic_against_monte_carlo() {
    let files = Files::new();
    let p = files.write(
        "q.json",
        &format!(r#"{{"g": {QUARTIC}, "y_grid": [1], "quadrature": {{"sample_count": 2000000}}}}"#),
    );
    let (_, rows) = csv_rows(&ok(&[
        "sweep",
        "--input",
        p.to_str().unwrap(),
        "--seed",
        "5",
    ]));
    assert!(num(&rows[0][5]) <= 0.01);
    assert_eq!(rows[0][7], "5");
}

#[test]
fn sweep_edge_cases() {
    let files = Files::new();
    let empty = files.write("e.json", &format!(r#"{{"g": {ROUND}, "y_grid": []}}"#));
    assert_eq!(
        ok(&["sweep", "--input", empty.to_str().unwrap()]),
        "y,lambda_y,v_dual,v_direct_mc,v_direct_boxindicator,rel_diff_dual_vs_mc,method,seed\n"
    );
    let mixed = r#"{"dim": 1, "terms": [{"coef": 1.0, "exps": [0]}, {"coef": 1.0, "exps": [2]}]}"#;
    let p = files.write(
        "m.json",
        &format!(r#"{{"f": {mixed}, "g": {SQUARE_1D}, "y_grid": [1]}}"#),
    );
    assert_eq!(
        run(&["sweep", "--input", p.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn laplace_check_examples() {
    let files = Files::new();
    let line = files.write("l.json", &format!(r#"{{"f": {ONE_1D}, "g": {SQUARE_1D}}}"#));
    let (header, rows) = csv_rows(&ok(&[
        "laplace-check",
        "--input",
        line.to_str().unwrap(),
        "--lambdas",
        "1",
    ]));
    assert_eq!(header.join(","), "lambda,lhs,rhs,rel_diff");
    assert!((num(&rows[0][1]) - PI.sqrt()).abs() < 1e-9);
    assert!((num(&rows[0][2]) - PI.sqrt()).abs() < 1e-9);
    assert!(num(&rows[0][3]) <= 1e-6);

    let simplex = files.write(
        "s.json",
        r#"{"simplex": true, "alpha_terms": [{"coef": 1.0, "alpha": [0.0, 0.0]}]}"#,
    );
    let (_, rows) = csv_rows(&ok(&[
        "laplace-check",
        "--input",
        simplex.to_str().unwrap(),
        "--lambdas",
        "2",
    ]));
    assert!((num(&rows[0][1]) - 0.125).abs() < 1e-9);
    assert!((num(&rows[0][2]) - 0.125).abs() < 1e-15);

    for bad in ["0", "-1"] {
        let out = run(&[
            "laplace-check",
            "--input",
            line.to_str().unwrap(),
            "--lambdas",
            bad,
        ]);
        assert_eq!(out.status.code(), Some(2));
    }
    let mixed = r#"{"dim": 1, "terms": [{"coef": 1.0, "exps": [0]}, {"coef": 1.0, "exps": [2]}]}"#;
    let p = files.write("m.json", &format!(r#"{{"f": {mixed}, "g": {SQUARE_1D}}}"#));
    assert_eq!(
        run(&["laplace-check", "--input", p.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn mvt_json_point() {
    let files = Files::new();
    let p = files.write(
        "m.json",
        &format!(r#"{{"f": {ROUND}, "g": {ROUND}, "y": 1}}"#),
    );
    let out: Value = serde_json::from_str(&ok(&["mvt", "--input", p.to_str().unwrap()])).unwrap();
    let (x1, x2) = (
        out[0]["x1"].as_f64().unwrap(),
        out[0]["x2"].as_f64().unwrap(),
    );
    assert!(((x1 * x1 + x2 * x2).sqrt() - 0.5f64.sqrt()).abs() < 1e-6);
    assert!((out[0]["target_mean"].as_f64().unwrap() - 0.5).abs() < 1e-10);
    assert!(out[0]["residual"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn find_lambda_interval() {
    let files = Files::new();
    let p = files.write("l.json", &format!(r#"{{"f": {ONE_1D}, "g": {SQUARE_1D}}}"#));
    let out: Value = serde_json::from_str(&ok(&[
        "find-lambda",
        "--input",
        p.to_str().unwrap(),
        "--target",
        "2",
        "--bracket",
        "1e-3,1e3",
    ]))
    .unwrap();
    assert!((out[0]["lambda"].as_f64().unwrap() - PI / 4.0).abs() < 1e-8);
}

#[test]
fn bench_fig1_quartic() {
    let out: Value = serde_json::from_str(&ok(&[
        "bench-fig1",
        "--variant",
        "quartic",
        "--samples",
        "1000000",
    ]))
    .unwrap();
    let row = &out[0];
    assert_eq!(row["variant"], "quartic");
    assert!((row["lambda_1"].as_f64().unwrap() - PI / 4.0).abs() < 1e-15);
    assert!(row["rel_diff_dual_vs_mc"].as_f64().unwrap() <= 0.01);
    assert!(row["rel_diff_boxindicator_vs_dual"]
        .as_f64()
        .unwrap()
        .is_finite());
}

#[test]
fn seed_flag_changes_monte_carlo_only() {
    let files = Files::new();
    let p = files.write(
        "d.json",
        &format!(r#"{{"g": {ROUND}, "y": 1, "quadrature": {{"sample_count": 10000}}}}"#),
    );
    let a: Value = serde_json::from_str(&ok(&[
        "integrate",
        "--input",
        p.to_str().unwrap(),
        "--seed",
        "1",
    ]))
    .unwrap();
    let b: Value = serde_json::from_str(&ok(&[
        "integrate",
        "--input",
        p.to_str().unwrap(),
        "--seed",
        "2",
    ]))
    .unwrap();
    assert_eq!(a[0]["v_dual"], b[0]["v_dual"]);
    assert_ne!(a[0]["v_direct_mc"], b[0]["v_direct_mc"]);
}
