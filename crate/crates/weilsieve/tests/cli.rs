use std::process::{Command, Output};

use weilsieve::sieve::{SieveReport, TestName, Verdict};

fn weilsieve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weilsieve"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn jsonlines_round_trip() {
    let out = weilsieve(&["--q", "7", "--g", "4", "--points", "25", "--format", "jsonlines"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<SieveReport> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 4);
    for (line, row) in text.lines().zip(&rows) {
        assert_eq!(serde_json::to_string(row).unwrap(), line);
        let h = row.candidate().expect("row rebuilds its candidate");
        assert_eq!(h.h().coeffs(), &row.h[..]);
        assert_eq!(row.q, 7);
        assert_eq!(row.point_counts.len(), 8);
    }
    assert_eq!(rows.iter().filter(|r| r.verdict == Verdict::Constrained).count(), 1);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("4 candidates: 3 ELIMINATED, 1 CONSTRAINED, 0 OPEN"), "{stderr}");
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["--q", "4", "--g", "8", "--points", "24", "--format", "jsonlines"];
    let a = weilsieve(&args);
    let b = weilsieve(&args);
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn single_polynomial_with_negative_coefficients() {
    let out = weilsieve(&["--q", "2", "--h", "-1,3,4,1", "--format", "jsonlines"]);
    assert_eq!(out.status.code(), Some(0));
    let row: SieveReport = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(row.g, 3);
    assert_eq!(row.verdict, Verdict::Constrained);
}

#[test]
fn text_format_and_test_selection() {
    let out = weilsieve(&["--q", "2", "--h", "4,4,1", "--tests", "nonneg_places,resultant1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("verdict: ELIMINATED"), "{text}");
    assert!(text.contains("a_2 = -1"), "{text}");
    assert!(!text.contains("surface_rules"));
}

#[test]
fn exhaustive_runs_past_elimination() {
    let out = weilsieve(&["--q", "2", "--h", "4,4,1", "--exhaustive", "--format", "jsonlines"]);
    let row: SieveReport = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(row.tests.len(), TestName::ALL.len());
}

#[test]
fn writes_to_out_file() {
    let dir = std::env::temp_dir().join(format!("weilsieve-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.jsonl");
    let out = weilsieve(&["--q", "8", "--h", "57,102,58,13,1", "--format", "jsonlines", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let row: SieveReport = serde_json::from_str(std::fs::read_to_string(&path).unwrap().trim()).unwrap();
    assert_eq!(row.eliminated_by().unwrap().name, TestName::PpOrdinarySimple);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["--q", "6", "--g", "2"][..],
        &["--q", "7", "--g", "4", "--points", "25", "--defect", "1"],
        &["--q", "7", "--g", "4", "--tests", "bogus"],
        &["--q", "2", "--h", "1,x,1"],
        &["--q", "2", "--h", "9,0,1"],
        &["--q", "2", "--h", "1,1", "--g", "3"],
        &["--q", "2"],
        &["--q", "2", "--g", "2", "--out", "/nonexistent/dir/out.txt"],
    ] {
        let out = weilsieve(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
