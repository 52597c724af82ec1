use std::fs;
use std::path::Path;

use fracplap::cli::execute;
use fracplap::experiments::{BlowupReport, HopfReport, SweepRow};
use fracplap::operator::I123Decomposition;
use fracplap::EvalResult;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = execute(
        std::iter::once("fracplap").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn blowup_csv_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("blowup.csv");
    let (code, _, err) = run(&[
        "blowup",
        "--s",
        "0.8",
        "--p",
        "2.2",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(code, 0, "{err}");
    let csv = fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,deriv_value,err_estimate,converged"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 12);
    let first: Vec<&str> = rows[0].split(',').collect();
    // 17 significant digits
    assert_eq!(
        first[0]
            .split('e')
            .next()
            .unwrap()
            .replace(['-', '.'], "")
            .len(),
        17
    );
    let report: BlowupReport =
        serde_json::from_str(&fs::read_to_string(out.with_extension("json")).unwrap()).unwrap();
    assert!((report.fitted_exponent + 0.36).abs() < 0.05);
    let again = serde_json::to_value(&report).unwrap();
    let original: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.with_extension("json")).unwrap()).unwrap();
    assert_eq!(again, original);
}

#[test]
fn csv_output_is_deterministic() {
    let args = ["blowup", "--s", "0.5", "--p", "2.8", "--format", "csv"];
    let (c1, a, _) = run(&args);
    let (c2, b, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let sweep = ["sweep", "--s-list", "0.5,0.8", "--p-list", "2.2,2.8"];
    let (_, a, _) = run(&sweep);
    let (_, b, _) = run(&sweep);
    assert_eq!(a, b);
    assert!(a.starts_with("s,p,threshold,classification,fitted_exponent\n"));
}

#[test]
fn json_reports_round_trip() {
    let (code, out, _) = run(&[
        "eval",
        "--field",
        "bump-square",
        "--x",
        "0.05",
        "--s",
        "0.5",
        "--p",
        "3",
    ]);
    assert_eq!(code, 0);
    let r: EvalResult = serde_json::from_str(&out).unwrap();
    assert!(r.converged && r.value < 0.0);

    let (code, out, _) = run(&[
        "decompose",
        "--x",
        "0.01",
        "--s",
        "0.5",
        "--p",
        "2.5",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let d: I123Decomposition = serde_json::from_str(&out).unwrap();
    assert!(d.i3_relative_mismatch() < 1e-8);

    let (code, out, _) = run(&[
        "sweep", "--s-list", "0.8", "--p-list", "2.2,2.8", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let rows: Vec<SweepRow> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].classification.as_str(), "blowup");
    assert_eq!(rows[1].classification.as_str(), "regular");

    let (code, out, err) = run(&[
        "hopf",
        "--samples",
        "3",
        "--tol",
        "1e-5",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0, "{err}");
    let h: HopfReport = serde_json::from_str(&out).unwrap();
    assert!(h.passed());
    let original: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_value(&h).unwrap(), original);
}

#[test]
fn hopf_csv_schema() {
    let (code, out, err) = run(&["hopf", "--samples", "2", "--tol", "1e-5"]);
    assert_eq!(code, 0, "{err}");
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("t,u,d,ratio"));
    assert_eq!(lines.count(), 99);
}

#[test]
fn validation_errors() {
    let (code, out, err) = run(&[
        "eval",
        "--field",
        "bump-square",
        "--x",
        "0.05",
        "--s",
        "0.5",
        "--p",
        "1.5",
    ]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert!(v["message"].as_str().unwrap().contains("p >= 2"));

    for args in [
        vec!["eval", "--s", "1.2"],
        vec!["eval", "--field", "nonsense"],
        vec!["blowup", "--n", "2"],
        vec!["blowup", "--grid", "0.01,0.02,0.03"],
        vec!["sweep", "--p-list", "1.9"],
        vec!["eval", "--x", "0.1,0.2"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 2, "{args:?}");
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["exit_code"], 2);
    }
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("blowup"));
}

#[test]
fn non_convergence_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"quadrature": {"max_panels": 2}}"#).unwrap();
    let (code, out, err) = run(&[
        "eval",
        "--x",
        "0.3",
        "--tol",
        "1e-12",
        "--config",
        path_str(&cfg),
    ]);
    assert_eq!(code, 3, "{err}");
    let r: EvalResult = serde_json::from_str(&out).unwrap();
    assert!(!r.converged);
    let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["exit_code"], 3);
}

#[test]
fn assertion_failure_exit_code() {
    // a beta this large breaks the subsolution inequality
    let (code, _, err) = run(&[
        "hopf",
        "--samples",
        "2",
        "--tol",
        "1e-5",
        "--beta",
        "5",
        "--format",
        "json",
    ]);
    assert_eq!(code, 4, "{err}");
    let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["error"], "assertion-failed");
}

#[test]
fn config_file_and_tabulated_field() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("bump.csv");
    let mut text = String::from("x,u\n");
    for i in 0..=400 {
        let x = -2.0 + 0.01 * i as f64;
        text.push_str(&format!(
            "{x},{}\n",
            fracplap::ScalarField::BumpSquare.value(&[x])
        ));
    }
    fs::write(&table, text).unwrap();
    fs::write(
        dir.path().join("bump.json"),
        r#"{"support_radius": 2.0, "smoothness_order": 3, "extension": "zero"}"#,
    )
    .unwrap();
    let field = format!("table:{}", table.display());
    let (code, out, err) = run(&["eval", "--field", &field, "--x", "0.4", "--tol", "1e-6"]);
    assert_eq!(code, 0, "{err}");
    let tab: EvalResult = serde_json::from_str(&out).unwrap();
    let (_, out, _) = run(&[
        "eval",
        "--field",
        "bump-square",
        "--x",
        "0.4",
        "--tol",
        "1e-6",
    ]);
    let exact: EvalResult = serde_json::from_str(&out).unwrap();
    assert!((tab.value - exact.value).abs() < 1e-3 * exact.value.abs());

    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"s": 0.5, "p": 2.5, "x": [0.05], "field": {"family": "bump-square"}, "format": "json"}"#).unwrap();
    let (code, from_file, _) = run(&["eval", "--config", path_str(&cfg)]);
    assert_eq!(code, 0);
    let (_, from_flags, _) = run(&["eval", "--s", "0.5", "--p", "2.5", "--x", "0.05"]);
    assert_eq!(from_file, from_flags);
    let (_, overridden, _) = run(&["eval", "--config", path_str(&cfg), "--p", "3"]);
    let (_, direct, _) = run(&["eval", "--s", "0.5", "--p", "3", "--x", "0.05"]);
    assert_eq!(overridden, direct);
}
