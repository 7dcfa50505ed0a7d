use std::path::Path;
use std::process::{Command, Output};

fn ccr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccr")).args(args).output().expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn schrodinger_pair_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("pair.json");
    let out = ccr(&["pair", "schrodinger", "--ring", "zmod:5", "--lambda", "1", "--out", p(&pair)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(pair.exists());
    let out = ccr(&["pair", "verify-ccr", p(&pair)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn degenerate_character_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("pair.json");
    let out = ccr(&["pair", "schrodinger", "--ring", "zmod:4", "--lambda", "2", "--out", p(&pair)]);
    assert_eq!(out.status.code(), Some(0));
    let out = ccr(&["svn", "intertwine", "--pair", p(&pair)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ker ∇_λ"));
}

#[test]
fn malformed_pair_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("pair.json");
    std::fs::write(&pair, "{\"not\": \"a pair\"}").unwrap();
    assert_eq!(ccr(&["pair", "verify-ccr", p(&pair)]).status.code(), Some(2));
    assert_eq!(ccr(&["ring", "info", "--ring", "nonsense"]).status.code(), Some(2));
}

#[test]
fn study_writes_one_csv_row_per_grid() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("study.csv");
    let out = ccr(&["approx", "study", "--theta", "golden", "--grids", "8,16", "--out", p(&csv)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "{text}");
    assert!(lines[0].starts_with("g,W,"));
}

#[test]
fn reports_are_reproducible_without_timing() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let run = || {
        let out = ccr(&["--no-timing", "--report", p(&report), "heis", "table", "--ring", "zmod:2"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read(&report).unwrap()
    };
    let first = run();
    assert_eq!(first, run());
    assert!(!String::from_utf8_lossy(&first).contains("wall_time_ms"));
}
