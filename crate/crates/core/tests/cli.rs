use std::process::{Command, Output};

use cubelink::cube::{build_x, import_complex, x_factors};
use cubelink::gamma::{build_gamma, Gamma, OffsetScheme};
use cubelink::verify::VerificationReport;

fn cubelink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubelink"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn gamma_prints_parseable_edge_list() {
    let out = cubelink(&["gamma", "--p", "11"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("gamma p=11 e1=0,1 e2=3,5 e3=0,2\n"));
    assert_eq!(text.lines().count(), 89);
    let g = Gamma::from_edge_list(&text).unwrap();
    assert_eq!(g, build_gamma(11, OffsetScheme::default()).unwrap());
}

#[test]
fn gamma_accepts_custom_offsets() {
    let out = cubelink(&[
        "gamma", "--p", "7", "--e1", "0,3", "--e2", "1,2", "--e3", "4,6",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("gamma p=7 e1=0,3 e2=1,2 e3=4,6\n"));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let ok = cubelink(&[
        "verify",
        "--target",
        "x",
        "--p",
        "11",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let report = VerificationReport::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(report.all_pass());
    assert!(report.checks.contains_key("x.link-gamma"));

    let bad = cubelink(&["verify", "--target", "gamma", "--p", "5"]);
    assert_eq!(bad.status.code(), Some(1));
    let report = VerificationReport::from_json(&String::from_utf8(bad.stdout).unwrap()).unwrap();
    assert!(report.checks["gamma.no-short-cycles"].witness.is_some());

    for args in [
        &["verify", "--target", "gamma", "--p", "2"][..],
        &["verify", "--target", "gamma", "--p", "11", "--e1", "3,14"],
        &[
            "verify",
            "--target",
            "gamma",
            "--p",
            "11",
            "--parallel",
            "0",
        ],
        &["verify", "--target", "nope", "--p", "11"],
        &["sweep", "--p-min", "5", "--p-max", "80"],
    ] {
        assert_eq!(cubelink(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn report_is_independent_of_parallelism() {
    let a = cubelink(&["verify", "--target", "x", "--p", "13", "--parallel", "1"]);
    let b = cubelink(&["verify", "--target", "x", "--p", "13", "--parallel", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.cells");
    let out = cubelink(&[
        "export",
        "--target",
        "x",
        "--p",
        "11",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let g = build_gamma(11, OffsetScheme::default()).unwrap();
    assert_eq!(import_complex(&path, x_factors(&g)).unwrap(), build_x(&g));
}

#[test]
fn export_reports_io_errors() {
    let out = cubelink(&[
        "export",
        "--target",
        "x",
        "--p",
        "11",
        "--out",
        "/nonexistent/dir/x.cells",
    ]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("No such file or directory"), "{err}");
}

#[test]
fn sweep_table_text() {
    let out = cubelink(&["sweep", "--p-min", "5", "--p-max", "11"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let p11 = text.lines().find(|l| l.starts_with("p=11 ")).unwrap();
    assert!(p11.contains("verdict=pass"));
    let p7 = text.lines().find(|l| l.starts_with("p=7 ")).unwrap();
    assert!(p7.contains("verdict=fail witness=4-cycle"));
}
