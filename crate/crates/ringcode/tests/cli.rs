//! End-to-end checks of the command-line interface.

use std::io::Write;
use std::process::Command;

fn ringcode(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_ringcode"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

fn matrix_file(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

#[test]
fn weights_z6_lee() {
    let (out, _, code) = ringcode(&["weights", "--ring", "Z6", "--wf", "lee"]);
    assert_eq!(code, 0);
    assert!(out.contains("A = 3"));
    assert!(out.contains("a_3      = 3"));
}

#[test]
fn weights_f2u_euclidean() {
    let (out, _, code) = ringcode(&["weights", "--ring", "F2U", "--wf", "euclidean"]);
    assert_eq!(code, 0);
    assert!(out.contains("A = 4"));
    assert!(out.contains("a_u      = 4"));
}

#[test]
fn weights_unknown_wf_is_usage_error() {
    let (_, err, code) = ringcode(&["weights", "--ring", "Z4", "--wf", "nope"]);
    assert_eq!(code, 1);
    assert!(err.contains("no built-in weight function"));
}

#[test]
fn gray_z4_standard_all_flags_true() {
    let (out, _, code) = ringcode(&["gray", "--ring", "Z4", "--map", "standard"]);
    assert_eq!(code, 0);
    assert!(out.contains("phi(2     ) = (1,1)"));
    assert!(out.contains("weight-preserving: true"));
    assert!(out.contains("isometric: true"));
    assert!(out.contains("bijective: true"));
}

#[test]
fn gray_search_z6_lee_finds_map() {
    let (out, _, code) = ringcode(&["gray", "--ring", "Z6", "--wf", "lee", "--search", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("isometric: true"));
}

#[test]
fn gray_search_z4_euclidean_none() {
    let (out, _, code) = ringcode(&["gray", "--ring", "Z4", "--wf", "euclidean", "--search", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("no isometric Gray map exists"));
    assert!(out.contains("search space"));
}

#[test]
fn code_info_z4_span2_strong_tight() {
    let f = matrix_file("ring: Z4\nn: 1\nrows:\n2\n");
    let (out, _, code) = ringcode(&[
        "code-info",
        f.path().to_str().unwrap(),
        "--wf",
        "lee",
        "--map",
        "standard",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("|C| = 2"));
    assert!(out.contains("d_lee = 2"));
    assert!(out.contains("StrongSingleton"));
    assert!(out.contains("holds, tight"));
}

#[test]
fn code_info_f2uv_candidate_not_a_violation() {
    let f = matrix_file("ring: F2UV\nn: 2\nrows:\nuv uv\n");
    let (out, _, code) = ringcode(&[
        "code-info",
        f.path().to_str().unwrap(),
        "--wf",
        "lee",
        "--map-file",
        map_f2uv_file().path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "the strong bound is tight here, not violated:\n{out}");
    assert!(out.contains("|C| = 2"));
    assert!(out.contains("d_lee = 8"));
    assert!(!out.contains("VIOLATED"));
}

fn map_f2uv_file() -> tempfile::NamedTempFile {
    // the standard F2UV map in the JSON exchange shape
    let (json, _, code) = ringcode(&["gray", "--ring", "F2UV", "--map", "standard", "--format", "json"]);
    assert_eq!(code, 0);
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

#[test]
fn code_info_parse_error_reports_line() {
    let f = matrix_file("ring: Z4\nn: 2\nrows:\n1 x\n");
    let (_, err, code) = ringcode(&["code-info", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 4"));
}

#[test]
fn code_info_zero_code_notice() {
    let f = matrix_file("ring: Z4\nn: 2\nrows:\n0 0\n");
    let (out, _, code) = ringcode(&["code-info", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("zero code"));
}

#[test]
fn scan_z4_clean() {
    let (out, _, code) = ringcode(&[
        "scan", "--ring", "Z4", "--n", "2", "--max-rows", "2", "--wf", "lee", "--map", "standard",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("violations total: 0"));
}

#[test]
fn scan_f5_hamming_clean() {
    let (out, _, code) = ringcode(&["scan", "--ring", "F5", "--n", "2", "--wf", "hamming"]);
    assert_eq!(code, 0);
    assert!(out.contains("violations total: 0"));
}

#[test]
fn scan_json_round_trips() {
    let (out, _, code) = ringcode(&[
        "scan", "--ring", "Z4", "--n", "1", "--wf", "lee", "--map", "standard", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(serde_json::to_string(&value).unwrap(), out.trim());
    assert_eq!(value["violations_total"], 0);
}

#[test]
fn scan_respects_budget_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_ringcode"))
        .args(["scan", "--ring", "Z4", "--n", "3", "--max-rows", "3"])
        .env("RINGCODE_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("weights.json");
    let (_, _, code) = ringcode(&[
        "weights", "--ring", "Z4", "--wf", "lee", "--format", "json",
        "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let content = std::fs::read_to_string(&path).unwrap();
    let value: serde_json::Value = serde_json::from_str(content.trim()).unwrap();
    assert_eq!(value["coeffs"][2], "2/1");
}
