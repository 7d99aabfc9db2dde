//! End-to-end tests of the `tork` binary: formats, exit codes, schemas,
//! JSONL batch behavior, and the oracle flag.

use std::path::Path;
use std::process::{Command, Output};

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_tork")
}

fn run(args: &[&str]) -> Output {
    Command::new(exe()).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

const SQUARE: &str = r#"{"facets":[[1,2],[2,3],[3,4],[1,4]],"m":4}"#;
/// Q as a module over S(2): one level of dimension 1, every variable acts
/// as zero.
const POINT_MODULE: &str = r#"{"m":2,"levels":[1],"mult":[]}"#;

#[test]
fn betti_tsv_matches_golden_square_table() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "square.json", SQUARE);
    let out = run(&["betti", "--input", &input, "--format", "tsv"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "i\t2j\tbeta\n0\t0\t1\n1\t4\t2\n2\t8\t1\n"
    );
}

#[test]
fn betti_json_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "square.json", SQUARE);
    let out = run(&["betti", "--input", &input]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let table = tork::koszul::BettiTable::from_json_str(&text).expect("output re-parses");
    assert_eq!(table.hrk(), 4);
    assert_eq!(table.beta(1, 2), 2);
    assert_eq!(table.var_count(), 4);
}

#[test]
fn betti_oracle_agrees_on_square() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "square.json", SQUARE);
    let out = run(&["betti", "--input", &input, "--oracle"]);
    assert!(out.status.success());
}

#[test]
fn betti_oracle_rejects_module_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "point.json", POINT_MODULE);
    let out = run(&["betti", "--input", &input, "--oracle"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_inputs_exit_with_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write(dir.path(), "broken.json", "{ this is not json");
    let out = run(&["betti", "--input", &broken]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());

    let unknown = write(dir.path(), "unknown.json", r#"{"foo": 1}"#);
    let out = run(&["betti", "--input", &unknown]);
    assert_eq!(out.status.code(), Some(3));

    let missing = dir.path().join("missing.json");
    let out = run(&["betti", "--input", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_module_input_passes_corners() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "point.json", POINT_MODULE);
    let out = run(&["check", "--input", &input, "--suite", "corners"]);
    assert!(out.status.success());
    let reports: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(reports[0]["suite"], "corner_bounds");
    assert_eq!(reports[0]["overall"], "pass");
}

#[test]
fn check_suite_list_on_square() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "square.json", SQUARE);
    let out = run(&["check", "--input", &input, "--suite", "eg,trk,euler"]);
    assert!(out.status.success(), "proved suites hold on the square");
    let reports: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports[0]["suite"], "evans_griffith");
    assert_eq!(reports[0]["overall"], "pass");
    assert_eq!(reports[1]["suite"], "toral_rank_zk");
    assert_eq!(reports[1]["overall"], "pass");
    // Every row comparison holds; the report is na overall because the
    // finite-dimensionality hypothesis is not established at pd < m.
    assert_eq!(reports[2]["suite"], "euler");
    assert_eq!(reports[2]["rows"][0]["status"], "pass");
    assert_eq!(reports[2]["overall"], "na");
}

#[test]
fn check_ab_on_square_is_not_applicable() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "square.json", SQUARE);
    let out = run(&["check", "--input", &input, "--suite", "ab"]);
    assert!(out.status.success());
    let reports: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports[0]["suite"], "avramov_buchweitz");
    assert_eq!(reports[0]["overall"], "na");
}

#[test]
fn check_tsv_format_and_unknown_suite() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "square.json", SQUARE);
    let out = run(&["check", "--input", &input, "--suite", "trk", "--format", "tsv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("suite\trow\tlhs\trhs\tstatus\n"), "{text}");
    assert!(text.contains("toral_rank_zk\thrk\t4\t4\tpass"), "{text}");

    let out = run(&["check", "--input", &input, "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_all_runs_every_suite() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "square.json", SQUARE);
    let out = run(&["check", "--input", &input]);
    assert!(out.status.success());
    let reports: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 9);
    // Summary lines go to stderr, one per suite.
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 9, "{stderr}");
    assert!(stderr.contains("toral_rank_zk: pass"));
}

#[test]
fn enum_exhaustive_m3_writes_19_records() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("m3.jsonl");
    let out = run(&[
        "enum",
        "--m",
        "3",
        "--exhaustive",
        "--no-timestamp",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let content = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(content.lines().count(), 19);
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["records"], 19);
    assert_eq!(summary["proved_failures"], false);
    // The toral-rank minimum is achieved (full simplex among others), and
    // the proved bound keeps it at exactly 1.
    assert_eq!(summary["min_hrk_ratio"], "1");

    // A second run appends: same 19 records again.
    let again = run(&[
        "enum",
        "--m",
        "3",
        "--exhaustive",
        "--no-timestamp",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(again.status.success());
    let content = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = content.lines().collect();
    assert_eq!(lines.len(), 38);
    assert_eq!(&lines[..19], &lines[19..], "append reproduces the records");
}

#[test]
fn enum_oracle_verifies_small_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("m2.jsonl");
    let out = run(&[
        "enum", "--m", "2", "--exhaustive", "--oracle", "--no-timestamp", "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let content = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(content.lines().count(), 5);
}

#[test]
fn enum_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.jsonl");
    // Exhaustive enumeration is capped at m = 5.
    let out = run(&[
        "enum", "--m", "6", "--exhaustive", "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Exactly one of --exhaustive/--sample is required.
    let out = run(&["enum", "--m", "3", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "enum", "--m", "3", "--exhaustive", "--sample", "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Unwritable output must abort before any computation.
    let out = run(&["enum", "--m", "3", "--exhaustive", "--out", "/nonexistent/dir/x.jsonl"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn tork_jobs_environment_variable() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("env.jsonl");
    let out = Command::new(exe())
        .env("TORK_JOBS", "2")
        .args([
            "enum", "--m", "2", "--exhaustive", "--no-timestamp", "--out",
            out_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());

    let out = Command::new(exe())
        .env("TORK_JOBS", "zero")
        .args(["betti", "--input", "whatever.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_aggregates_and_skips_corrupt_lines() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("m3.jsonl");
    let out = run(&[
        "enum", "--m", "3", "--exhaustive", "--no-timestamp", "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = run(&["report", "--input", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["records"], 19);
    assert_eq!(summary["skipped"], 0);
    assert_eq!(summary["min_hrk_ratio"], "1");
    assert_eq!(summary["suites"]["toral_rank_zk"]["pass"], 19);
    assert_eq!(summary["suites"]["toral_rank_zk"]["fail"], 0);
    // hrk distribution covers all 19 complexes.
    let total: u64 = summary["hrk_distribution"]
        .as_object()
        .unwrap()
        .values()
        .map(|v| v.as_u64().unwrap())
        .sum();
    assert_eq!(total, 19);

    // Corrupt one line: the report skips it and says so.
    let mut content = std::fs::read_to_string(&out_path).unwrap();
    content.push_str("this line is not a record\n");
    std::fs::write(&out_path, content).unwrap();
    let out = run(&["report", "--input", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["records"], 19);
    assert_eq!(summary["skipped"], 1);
    assert!(String::from_utf8(out.stderr).unwrap().contains("skipped 1"));

    // Report with the oracle re-checks every embedded table.
    let out = run(&["report", "--input", out_path.to_str().unwrap(), "--oracle"]);
    assert!(out.status.success());
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["oracle"]["checked"], 19);
    assert_eq!(summary["oracle"]["mismatches"], 0);

    // TSV variant.
    let out = run(&["report", "--input", out_path.to_str().unwrap(), "--format", "tsv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("records\t19"), "{text}");
    assert!(text.contains("skipped\t1"), "{text}");
}

#[test]
fn report_on_empty_file_is_empty_summary() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.jsonl", "");
    let out = run(&["report", "--input", &empty]);
    assert!(out.status.success());
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["records"], 0);
    assert_eq!(summary["skipped"], 0);
    assert!(summary.get("min_hrk_ratio").is_none());
}
