use std::fs;
use std::process::{Command, Output};

use logconcave::bfile::BFile;
use logconcave::report::ReportDocument;
use num_bigint::BigInt;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logconcave"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn classify_exit_codes() {
    assert_eq!(code(&run(&["classify", "-P", "3", "-Q", "2"])), 0);
    assert_eq!(code(&run(&["classify", "-P", "1", "-Q", "-1"])), 1);
    assert_eq!(code(&run(&["classify", "-P", "1", "-Q", "5"])), 2);
    assert_eq!(code(&run(&["classify", "-P", "0", "-Q", "-1"])), 2);
    assert_eq!(code(&run(&["classify", "-P", "1"])), 64);
    assert_eq!(code(&run(&["frobnicate"])), 64);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn classify_reports_witness() {
    let out = run(&["classify", "-P", "2", "-Q", "-1"]);
    let text = stdout(&out);
    assert!(text.contains("not 1-fold"), "{text}");
    assert!(text.contains("= -1"), "{text}");
}

#[test]
fn table_matches_fixture() {
    let out = run(&["table"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), include_str!("fixtures/table.txt"));
}

#[test]
fn fibonacci_log_iterates() {
    let l1 = stdout(&run(&["logk", "-P", "1", "-Q", "-1", "--depth", "1", "--horizon", "6"]));
    assert_eq!(
        data_lines(&l1),
        ["0 0", "1 1", "2 -1", "3 1", "4 -1", "5 1", "6 -1"]
    );
    let l2 = stdout(&run(&["logk", "-P", "1", "-Q", "-1", "--depth", "2", "--horizon", "4"]));
    assert_eq!(data_lines(&l2), ["0 0", "1 1", "2 0", "3 0", "4 0"]);
}

#[test]
fn constant_log_image() {
    let out = run(&["logk", "--source", "const:7", "--depth", "1", "--horizon", "3"]);
    assert_eq!(data_lines(&stdout(&out)), ["0 49", "1 0", "2 0", "3 0"]);
}

#[test]
fn bfile_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pell.b");
    let generated = stdout(&run(&["gen", "-P", "2", "-Q", "-1", "--horizon", "150"]));
    fs::write(&path, &generated).unwrap();
    let again = stdout(&run(&["gen", "--input", path.to_str().unwrap()]));
    assert_eq!(data_lines(&again), data_lines(&generated));

    let parsed = BFile::parse(&generated).unwrap();
    assert_eq!(parsed.values().len(), 151);
    let (mut a, mut b) = (BigInt::from(0), BigInt::from(1));
    for _ in 0..150 {
        (a, b) = (b.clone(), 2 * b + a);
    }
    assert_eq!(parsed.values()[150], a);
    assert_eq!(BFile::parse(&again).unwrap().emit(), parsed.emit());
}

#[test]
fn logk_of_file_truncates_right_edge() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fib.b");
    fs::write(&path, "0 0\n1 1\n2 1\n3 2\n4 3\n5 5\n").unwrap();
    let out = stdout(&run(&["logk", "--input", path.to_str().unwrap(), "--depth", "1"]));
    assert_eq!(data_lines(&out), ["0 0", "1 1", "2 -1", "3 1", "4 -1"]);
}

#[test]
fn check_exit_codes() {
    assert_eq!(code(&run(&["check", "-P", "3", "-Q", "2", "--depth", "5"])), 0);
    assert_eq!(code(&run(&["check", "-P", "1", "-Q", "-1", "--depth", "1"])), 1);
    assert_eq!(code(&run(&["check", "--source", "geom:-3,2", "--depth", "4"])), 0);
    assert_eq!(code(&run(&["check", "-P", "3", "-Q", "2", "--depth", "0"])), 64);
}

#[test]
fn parse_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.b");
    fs::write(&bad, "0 1\n2 3\n").unwrap();
    let out = run(&["gen", "--input", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 65);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    // a malformed generator spec is an argument error, not a data error
    assert_eq!(code(&run(&["gen", "--source", "lucas:1"])), 64);
    let missing = dir.path().join("missing.b");
    assert_eq!(code(&run(&["gen", "--input", missing.to_str().unwrap()])), 74);
    assert_eq!(code(&run(&["gen"])), 64);
}

#[test]
fn search_limits() {
    assert_eq!(code(&run(&["search", "--order", "5", "--range", "-1..1"])), 66);
    assert_eq!(code(&run(&["search", "--order", "2", "--range", "-20..20"])), 66);
    assert_eq!(code(&run(&["search", "--order", "2", "--range", "3..1"])), 66);
}

#[test]
fn search_report_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.jsonl");
    let out = run(&[
        "search",
        "--order",
        "2",
        "--range",
        "-3..3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let summary = stdout(&out);
    assert!(summary.contains("specs: 49"), "{summary}");
    assert!(summary.contains("anomalies: 0"), "{summary}");

    let text = fs::read_to_string(&path).unwrap();
    let doc = ReportDocument::parse_machine(&text).unwrap();
    assert_eq!(doc.entries.len(), 49);
    assert_eq!(doc.emit_machine(), text);
    assert_eq!(doc.summary().anomalies, 0);
    let mersenne = doc
        .entries
        .iter()
        .find(|e| e.report.spec.coeffs() == [BigInt::from(3), BigInt::from(-2)])
        .unwrap();
    assert!(mersenne.lucas.as_ref().unwrap().verdict.is_infinitely_log_concave());
}
