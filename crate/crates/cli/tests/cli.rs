use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn awglue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_awglue")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SIERPINSKI: &str = r#"{"points": ["o", "c"], "closure": {"o": ["o", "c"], "c": ["c"]}}"#;
const TWO_POINTS: &str = r#"{"points": ["p", "q"], "closure": {"p": ["p"], "q": ["q"]}}"#;

#[test]
fn line_has_two_certified_ends() {
    let o = awglue(&["ends", "--graph", "line", "--depth", "5", "--horizon", "25"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("ends: 2 (certified)"), "{}", stdout(&o));
}

#[test]
fn ends_writes_dot() {
    let dir = TempDir::new().unwrap();
    let dot = dir.path().join("tree.dot");
    let o = awglue(&["ends", "--graph", "star:3", "--depth", "3", "--horizon", "10", "--dot", s(&dot)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("ends: 3"));
    assert!(fs::read_to_string(&dot).unwrap().contains("digraph"));
}

#[test]
fn glue_round_trips_through_files() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", SIERPINSKI);
    let y = write(&dir, "y.json", TWO_POINTS);
    let f = write(&dir, "f.json", r#"{"gen": {"o": ["p", "q"], "c": ["p"]}}"#);
    let out = dir.path().join("sum.json");
    let o = awglue(&["glue", "--left", s(&x), "--right", s(&y), "--f", s(&f), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    for key in ["\"total\"", "\"left\"", "\"right\""] {
        assert!(text.contains(key), "{text}");
    }
}

#[test]
fn non_monotone_map_is_rejected_by_name() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", SIERPINSKI);
    let y = write(&dir, "y.json", TWO_POINTS);
    let f = write(&dir, "f.json", r#"{"gen": {"o": [], "c": ["p"]}}"#);
    let o = awglue(&["glue", "--left", s(&x), "--right", s(&y), "--f", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("not monotone") && err.contains("\"c\"") && err.contains("\"o\""), "{err}");
}

#[test]
fn malformed_input_reports_its_line() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", "{\n  \"points\": [\"a\"],\n  \"closure\": {\"a\": [\"a\"]\n");
    let y = write(&dir, "y.json", TWO_POINTS);
    let f = write(&dir, "f.json", r#"{"gen": {}}"#);
    let o = awglue(&["glue", "--left", s(&x), "--right", s(&y), "--f", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line "), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(awglue(&["ends", "--graph", "line", "--depth", "2", "--horizon", "5", "--frobnicate"]).status.code(), Some(1));
    assert_eq!(awglue(&["verify-laws"]).status.code(), Some(1));
    assert_eq!(awglue(&["verify-laws", "--suite", "nope"]).status.code(), Some(1));
    assert_eq!(awglue(&["ends", "--graph", "moebius", "--depth", "2", "--horizon", "5"]).status.code(), Some(1));
}

#[test]
fn verify_laws_is_deterministic() {
    let args = ["verify-laws", "--suite", "all", "--trials", "20", "--seed", "11"];
    let a = awglue(&args);
    let b = awglue(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let threaded = awglue(&[&args[..], &["--jobs", "3"]].concat());
    assert_eq!(a.stdout, threaded.stdout);
}

#[test]
fn violations_exit_two() {
    let o = awglue(&["verify-laws", "--suite", "ends", "--trials", "30", "--mutation", "force-escapes"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("violation:"));
}

#[test]
fn limits_of_a_single_object() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", SIERPINSKI);
    let y = write(&dir, "y.json", TWO_POINTS);
    let f = write(&dir, "f.json", r#"{"gen": {"o": ["p", "q"], "c": ["p"]}}"#);
    let sum = awglue(&["glue", "--left", s(&x), "--right", s(&y), "--f", s(&f)]);
    assert_eq!(sum.status.code(), Some(0), "{}", stderr(&sum));
    let diagram = format!("{{\"objects\": {{\"a\": {}}}, \"arrows\": []}}", stdout(&sum));
    let d = write(&dir, "d.json", &diagram);
    let o = awglue(&["limits", "--diagram", s(&d)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["full"]["total"]["points"].as_array().unwrap().len(), 4);
}

#[test]
fn coarse_queries() {
    let dir = TempDir::new().unwrap();
    let cs = write(&dir, "cs.json", r#"{"ground": ["a", "b", "c"], "generators": [[["a", "b"]]]}"#);
    let ask = |extra: &[&str]| {
        let o = awglue(&[&["coarse-check", "--structure", s(&cs)], extra].concat());
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        stdout(&o).trim().to_string()
    };
    assert_eq!(ask(&["--op", "controlled", "--relation", r#"[["b", "a"]]"#]), "true");
    assert_eq!(ask(&["--op", "controlled", "--relation", r#"[["a", "c"]]"#]), "false");
    assert_eq!(ask(&["--op", "bounded", "--set", "a,b"]), "true");
    assert_eq!(ask(&["--op", "bounded", "--set", "a,c"]), "false");
    assert_eq!(ask(&["--op", "connected"]), "false");
    assert!(ask(&["--op", "summary"]).contains("\"maximal\""));
    let o = awglue(&["coarse-check", "--structure", s(&cs), "--op", "bounded", "--set", "z"]);
    assert_eq!(o.status.code(), Some(1));
}
