use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn tourlen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tourlen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn evaluate_writes_all_outputs() {
    let out = tempfile::tempdir().unwrap();
    let tsplib = data_dir().join("tsplib");
    let reported = data_dir().join("reported_values.csv");
    let o = tourlen(&[
        "evaluate",
        "--instances",
        tsplib.to_str().unwrap(),
        "--reported",
        reported.to_str().unwrap(),
        "--out",
        out.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("evaluated 6 instances"));
    for f in ["table1.csv", "table1.txt", "instances.csv", "hist_O1.csv", "hist_HK.csv", "hist_T_ratio.csv"] {
        assert!(out.path().join(f).is_file(), "{f} missing");
    }
    let hist = fs::read_to_string(out.path().join("hist_O1.csv")).unwrap();
    let ns: Vec<usize> = hist.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(ns.len(), 6);
    assert!(ns.windows(2).all(|w| w[0] <= w[1]));
    let hk = fs::read_to_string(out.path().join("hist_HK.csv")).unwrap();
    assert_eq!(hk.lines().count(), 1 + 2);
}

#[test]
fn evaluate_with_formula_subset() {
    let out = tempfile::tempdir().unwrap();
    let tsplib = data_dir().join("tsplib");
    let o = tourlen(&[
        "evaluate",
        "--instances",
        tsplib.to_str().unwrap(),
        "--out",
        out.path().to_str().unwrap(),
        "--formulas",
        "Ot1,O1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = fs::read_to_string(out.path().join("table1.csv")).unwrap();
    let rows: Vec<&str> = table.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(rows, ["O1", "Ot1"]);
    assert!(!out.path().join("hist_O2.csv").exists());
}

#[test]
fn bad_arguments_fail_cleanly() {
    let out = tempfile::tempdir().unwrap();
    let tsplib = data_dir().join("tsplib");
    let base = ["evaluate", "--instances", tsplib.to_str().unwrap(), "--out", out.path().to_str().unwrap()];

    let mut args = base.to_vec();
    args.extend(["--formulas", "O9"]);
    let o = tourlen(&args);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("O9"));

    let mut args = base.to_vec();
    args.extend(["--exact-cap", "40"]);
    assert!(!tourlen(&args).status.success());

    let missing = out.path().join("nope");
    let o = tourlen(&["evaluate", "--instances", missing.to_str().unwrap(), "--out", out.path().to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));
}

#[test]
fn audit_writes_csv() {
    let out = tempfile::tempdir().unwrap();
    let tsplib = data_dir().join("tsplib");
    let reported = data_dir().join("reported_values.csv");
    let o = tourlen(&[
        "audit",
        "--instances",
        tsplib.to_str().unwrap(),
        "--reported",
        reported.to_str().unwrap(),
        "--out",
        out.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let audit = fs::read_to_string(out.path().join("audit.csv")).unwrap();
    assert!(audit.lines().nth(1).unwrap().starts_with("pcb442,442,"));
}

#[test]
fn curves_writes_fig1() {
    let out = tempfile::tempdir().unwrap();
    let o = tourlen(&["curves", "--d-max", "10", "--out", out.path().to_str().unwrap()]);
    assert!(o.status.success());
    let fig = fs::read_to_string(out.path().join("fig1.csv")).unwrap();
    assert_eq!(fig.lines().count(), 41);
}

#[test]
fn grid_reports_closed_form_and_exact() {
    let o = tourlen(&["grid", "--sides", "4,3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("closed-form optimum 12\n"));
    assert!(text.contains("exact 12"));
    assert!(text.contains("mst 11\n"));

    let o = tourlen(&["grid", "--sides", "3,3"]);
    assert!(!o.status.success());
}

#[test]
fn solve_small_and_large() {
    let dir = tempfile::tempdir().unwrap();
    let tiny = dir.path().join("tiny.tsp");
    fs::write(
        &tiny,
        "NAME : tiny\nTYPE : TSP\nDIMENSION : 4\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 3 0\n3 3 4\n4 0 4\nEOF\n",
    )
    .unwrap();
    let o = tourlen(&["solve", "--instance", tiny.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("exact 14"));

    let eil = data_dir().join("tsplib/eil51.tsp");
    let o = tourlen(&["solve", "--instance", eil.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("exact skipped"));
    assert!(text.contains("nearest town best start"));
}
