use std::process::Command;

use cycfusion::report::{RunReport, REPORT_VERSION};

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cycfusion"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn verify_family_passes() {
    let (code, stdout, _) = run(&["verify", "--family", "A:2,3,5", "--m", "1"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("bm_fusion: pass"));
    assert!(!stdout.contains("FAIL"));
    assert!(!stdout.contains("elapsed"));

    let (code, stdout, _) = run(&["verify", "--family", "B:2,7", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("verdict,holds\n"));
    assert!(stdout.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn json_report_round_trips_and_is_deterministic() {
    let args = ["verify", "--family", "A:2,5,3", "--format", "json"];
    let (code, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let report = RunReport::from_json(&a).unwrap();
    assert_eq!(report.version, REPORT_VERSION);
    assert!(report.passed);
    assert!(report.elapsed_ms.is_none());
    assert_eq!(report.to_json() + "\n", a);
    let f = report.fusion.unwrap();
    assert_eq!((f.q, f.n, f.d), (16, 15, 15));

    let (_, timed, _) = run(&[
        "verify", "--family", "A:2,5,3", "--format", "json", "--timing",
    ]);
    assert!(RunReport::from_json(&timed).unwrap().elapsed_ms.is_some());
}

#[test]
fn cyclotomic_scheme_passes() {
    let (code, stdout, _) = run(&["verify", "--p", "3", "--f", "4", "--base-N", "10"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("design_agrees_with_pseudocyclic: pass"));
}

#[test]
fn refuting_scheme_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("split.txt");
    std::fs::write(
        &path,
        "cycfusion-scheme v1\n# GF(8), classes {0,1} against the rest\np 2\nf 3\nmodulus 1 1 0 1\nbase_n 7\nd 2\npart 0 1\npart 2 3 4 5 6\n",
    )
    .unwrap();
    let (code, stdout, _) = run(&["verify", "--scheme-file", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("bm_fusion: FAIL"));
    assert!(stdout.contains("association_scheme: FAIL"));
    assert!(stdout.contains("bm_agrees_with_tensor: pass"));

    let (code, stdout, _) = run(&["eigenmatrix", "--scheme-file", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{stdout}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify"],
        vec!["verify", "--family", "C:2,3"],
        vec!["verify", "--family", "A:2,3,7"],
        vec!["verify", "--family", "B:2,7", "--m", "9"],
        vec!["verify", "--p", "4", "--f", "2", "--base-N", "5"],
        vec!["verify", "--p", "2", "--f", "4", "--base-N", "4"],
        vec!["verify", "--scheme-file", "/nonexistent/scheme"],
        vec!["search", "--p-max", "x"],
        vec!["frobnicate"],
    ] {
        let (code, _, stderr) = run(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn malformed_scheme_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(
        &path,
        "cycfusion-scheme v1\np 2\nf 3\nmodulus 1 1 1 1\nbase_n 7\nd 1\npart 0 1 2 3 4 5 6\n",
    )
    .unwrap();
    let (code, _, stderr) = run(&["verify", "--scheme-file", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 4"), "{stderr}");
}

#[test]
fn search_output() {
    let (code, stdout, _) = run(&["search", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "case,p,p1,p2,tag,b,c_abs,h");
    assert_eq!(lines.len(), 13);
    assert!(lines.contains(&"A,2,3,5,A1,1,1,2"));
    assert!(lines.contains(&"B,3,107,,B2,1,1,3"));

    let (code, stdout, _) = run(&["search", "--p-max", "0"]);
    assert_eq!(code, 0);
    assert!(stdout.trim().is_empty(), "{stdout}");

    let (code, stdout, _) = run(&[
        "search", "--p-max", "3", "--p1-max", "200", "--p2-max", "20", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let hits = RunReport::from_json(&stdout).unwrap().search.unwrap();
    assert!(hits.iter().any(|h| (h.record.p, h.record.p1) == (3, 107)));
}

#[test]
fn eigenmatrix_csv() {
    let (code, stdout, _) = run(&[
        "eigenmatrix",
        "--p",
        "2",
        "--f",
        "4",
        "--base-N",
        "5",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = stdout.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0], vec!["1", "3", "3", "3", "3", "3"]);
    assert!(rows.iter().all(|r| r.len() == 6 && r[0] == "1"));

    let (code, stdout, _) = run(&[
        "eigenmatrix",
        "--family",
        "A:2,3,5",
        "--m",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = stdout.lines().collect();
    assert_eq!(rows.len(), 16);
    assert!(rows[0].starts_with("1,273,273"));
}

#[test]
fn threads_flag_is_accepted() {
    let (code, _, _) = run(&["--threads", "1", "verify", "--family", "A:2,3,5"]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["--version"]);
    assert_eq!(code, 0);
}
