//! End-to-end checks of the binary: exit codes, determinism of the outputs
//! section, and the worked examples.

use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_igusa"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

fn sample(name: &str) -> String {
    format!("{}/samples/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn outputs_section(stdout: &str) -> serde_json::Value {
    let v: serde_json::Value = serde_json::from_str(stdout).expect("valid report JSON");
    v.get("outputs").expect("outputs present").clone()
}

#[test]
fn reports_are_deterministic() {
    let cases: Vec<Vec<String>> = vec![
        vec![
            "count".into(),
            sample("conic.json"),
            "--modulus".into(),
            "7".into(),
        ],
        vec![
            "denef".into(),
            sample("affine_line.json"),
            "--line".into(),
            sample("volume_line.json"),
            "--series".into(),
            "30".into(),
        ],
        vec![
            "tauber".into(),
            "--ratfun".into(),
            "1/(1-u)^2".into(),
            "--q".into(),
            "2".into(),
            "--cesaro".into(),
        ],
        vec!["wonderful".into(), "A".into(), "2".into(), "1,1".into()],
        vec!["example".into(), "local-line".into()],
    ];
    for case in cases {
        let args: Vec<&str> = case.iter().map(|s| s.as_str()).collect();
        let (out1, _, code1) = run(&args);
        let (out2, _, code2) = run(&args);
        assert_eq!(code1, 0, "case {case:?}");
        assert_eq!(code2, 0);
        // the outputs section and the digest are byte-identical run to run
        assert_eq!(
            outputs_section(&out1),
            outputs_section(&out2),
            "outputs differ for {case:?}"
        );
        let d1: serde_json::Value = serde_json::from_str(&out1).unwrap();
        let d2: serde_json::Value = serde_json::from_str(&out2).unwrap();
        assert_eq!(d1["inputs_digest"], d2["inputs_digest"]);
    }
}

#[test]
fn validation_errors_exit_2() {
    let (_, err, code) = run(&["tauber", "--ratfun", "1/(1+u+u^2)", "--q", "2"]);
    assert_eq!(code, 2, "stderr: {err}");
    assert!(err.contains("error"));
    let (_, _, code) = run(&["example", "no-such-example"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["count", &sample("conic.json")]);
    assert_eq!(code, 2);
}

#[test]
fn budget_exhaustion_exits_3() {
    let (_, _, code) = run(&[
        "count",
        &sample("conic.json"),
        "--modulus",
        "4096",
        "--budget",
        "1000000",
    ]);
    assert_eq!(code, 3);
}

#[test]
fn wonderful_adjoint_a2() {
    let (out, _, code) = run(&["wonderful", "A", "2", "1,1"]);
    assert_eq!(code, 0);
    let o = outputs_section(&out);
    assert_eq!(o["sigma"], "2");
    assert_eq!(o["t"], 2);
}

#[test]
fn tauber_expression_report() {
    let (out, _, code) = run(&["tauber", "--ratfun", "1/(1-u)^2", "--q", "2"]);
    assert_eq!(code, 0);
    let o = outputs_section(&out);
    let poles = o["poles"].as_array().unwrap();
    assert_eq!(poles.len(), 1);
    // Q has degree 2 with leading coefficient 1/2
    let q = poles[0]["Q"].as_array().unwrap();
    assert_eq!(q.len(), 3);
    assert_eq!(q[2], "1/2");
}

#[test]
fn example_pipelines_cover_every_module() {
    let (out, _, code) = run(&["example", "all", "--prime-bound", "2000"]);
    assert_eq!(code, 0);
    let o = outputs_section(&out);
    for key in [
        "x2p1",
        "local-line",
        "toric-p1p1",
        "wonderful-a2",
        "binary-forms",
    ] {
        assert!(o.get(key).is_some(), "missing pipeline {key}");
    }
    // spot checks across modules
    assert_eq!(o["x2p1"]["vol_U_Z2"], "3/4");
    assert_eq!(o["x2p1"]["global_abscissa"]["b"], 1);
    assert_eq!(o["binary-forms"]["exponents"][0]["a"], "2/3");
    assert_eq!(o["toric-p1p1"]["p1xp1_swap"]["analytic_complex"]["dimension"], 0);
    assert_eq!(o["local-line"]["lines"][0]["matches_local_zeta"], true);
}

#[test]
fn csv_projection() {
    let (out, _, code) = run(&[
        "--csv",
        "count",
        &sample("conic.json"),
        "--weil",
        "2,4",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("weil_volume,3/4"), "csv was: {out}");
}
