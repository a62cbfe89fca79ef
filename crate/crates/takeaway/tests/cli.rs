use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const FIRST: &str = r#"{"vertices":["S","A","B"],"edges":[["A","B"],["S","A","B"]]}"#;

fn takeaway(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_takeaway")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_reports_group_and_prediction() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "first.json", FIRST);
    let o = takeaway(&["analyze", &file]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("group: I\n"), "{text}");
    assert!(text.contains("special vertex: S\n"));
    assert!(text.contains("predicted g = 1 (Theorem7)"));
}

#[test]
fn analyze_json_document() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "first.json", FIRST);
    let o = takeaway(&["analyze", "--json", &file]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["structure_report"]["group"], "I");
    assert_eq!(doc["structure_report"]["subcategories"]["A"], "A");
    assert_eq!(doc["prediction"]["value"], 1);
    assert_eq!(doc["lemmas"].as_array().unwrap().len(), 5);
}

#[test]
fn analyze_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let two_even = write(dir.path(), "two.json", r#"{"vertices":["A","B","C","D"],"edges":[["A","B"],["C","D"]]}"#);
    let o = takeaway(&["analyze", &two_even]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("multiple_even_edges"), "{}", stdout(&o));

    let bad = write(dir.path(), "bad.json", r#"{"vertices":["A"],"edges":[["A","B"]]}"#);
    let o = takeaway(&["analyze", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown-vertex-name-in-edge"));

    let o = takeaway(&["analyze", &dir.path().join("missing.json").to_string_lossy()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn solve_prints_value_and_winning_moves() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "first.json", FIRST);
    for extra in [&[][..], &["--iso"][..]] {
        let mut args = vec!["solve"];
        args.extend_from_slice(extra);
        args.push(&file);
        let o = takeaway(&args);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        assert!(text.starts_with("value: 1\n"), "{text}");
        assert!(text.contains("winning moves: remove vertex A; remove vertex B\n"), "{text}");
    }
    let o = takeaway(&["solve", "--stats", &file]);
    assert!(stdout(&o).contains("table: entries"));
}

#[test]
fn solve_small_cases() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.json", r#"{"vertices":[],"edges":[]}"#);
    let o = takeaway(&["solve", &empty]);
    assert!(stdout(&o).starts_with("value: 0\n"));
    assert!(stdout(&o).contains("winning moves: none"));

    let triple = write(dir.path(), "triple.json", r#"{"vertices":["S","a","b"],"edges":[["S","a","b"]]}"#);
    assert!(stdout(&takeaway(&["solve", &triple])).starts_with("value: 2\n"));
}

#[test]
fn solve_rejects_oversized_instances() {
    let dir = tempfile::tempdir().unwrap();
    let names: Vec<String> = (0..17).map(|i| format!("\"x{i}\"")).collect();
    let big = write(dir.path(), "big.json", &format!(r#"{{"vertices":[{}],"edges":[]}}"#, names.join(",")));
    assert_eq!(takeaway(&["solve", &big]).status.code(), Some(3));
}

#[test]
fn enumerate_counts() {
    let o = takeaway(&["enumerate", "--max-half-size", "2", "--count-only"]);
    assert_eq!(stdout(&o), "m=1: 1\nm=2: 40\ntotal: 41\n");
    let o = takeaway(&["enumerate", "--max-half-size", "1"]);
    assert_eq!(stdout(&o), "{\"vertices\":[\"S\",\"v1\",\"v2\"],\"edges\":[[\"S\",\"v1\",\"v2\"],[\"v1\",\"v2\"]]}\n");
}

#[test]
fn verify_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = takeaway(&["verify", "--max-half-size", "2", "--out", &out.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("41 records written"), "{text}");
    assert!(text.trim_end().ends_with("0 mismatches"), "{text}");
    let csv = fs::read_to_string(out.join("report.csv")).unwrap();
    assert_eq!(csv.lines().count(), 42);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 41);
    assert!(!out.join("mismatches").exists());

    let o = takeaway(&["verify", "--max-half-size", "2", "--mismatches-only", "--out", &out.to_string_lossy()]);
    assert!(stdout(&o).starts_with("4 records written"), "{}", stdout(&o));
}

#[test]
fn verify_rejects_large_half_size() {
    let dir = tempfile::tempdir().unwrap();
    let o = takeaway(&["verify", "--max-half-size", "9", "--out", &dir.path().to_string_lossy()]);
    assert_eq!(o.status.code(), Some(3));
}
