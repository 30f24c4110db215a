use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use folham::cli::{find_example, Report};
use tempfile::TempDir;

fn folham(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_folham")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn example_file(dir: &TempDir, name: &str) -> PathBuf {
    write(dir, &format!("{name}.json"), find_example(name).unwrap().json)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_exit_codes_match_corpus() {
    let dir = TempDir::new().unwrap();
    for (name, expected) in [
        ("EX-A", 0),
        ("EX-B", 1),
        ("EX-C", 1),
        ("EX-D", 0),
        ("EX-E", 1),
        ("EX-F", 1),
        ("EX-G", 0),
    ] {
        let out = folham(&["verify", s(&example_file(&dir, name))]);
        assert_eq!(code(&out), expected, "{name}: {}", stdout(&out));
    }
}

#[test]
fn verify_text_report() {
    let dir = TempDir::new().unwrap();
    let out = folham(&["verify", s(&example_file(&dir, "EX-A"))]);
    let text = stdout(&out);
    assert!(text.starts_with("EX-A: q=2 p=1 coordinates [x1, x2, y3]"));
    assert!(text.contains("tame         pass"));
    assert!(text.contains("point (1, 1/2, -2): rank W = 2, dim(H0 ∩ TF) = 0, dim CharDist = 3"));
    assert!(text.contains("fundamental form: pass"));
}

#[test]
fn json_to_stdout_and_to_file() {
    let dir = TempDir::new().unwrap();
    let spec = example_file(&dir, "EX-F");
    let out = folham(&["verify", s(&spec), "--json", "-"]);
    assert_eq!(code(&out), 1);
    let report = Report::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.exit_code(), 1);
    assert!(!report.classification.as_ref().unwrap().hamiltonian.passed);

    let path = dir.path().join("report.json");
    let out = folham(&["classify", s(&spec), "--json", s(&path)]);
    assert!(stdout(&out).contains("hamiltonian  FAIL"));
    let report = Report::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(report.identities.is_none());
}

#[test]
fn bracket_command() {
    let dir = TempDir::new().unwrap();
    let a = example_file(&dir, "EX-A");
    let out = folham(&["bracket", s(&a), "--f", "x1", "--g", "x2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("{x1, x2} = 1"));
    let out = folham(&["bracket", s(&a), "--f", "x1*y3", "--g", "x2", "--extended"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("= y3"), "{}", stdout(&out));
    // y3 is not foliated, so the plain bracket is undefined
    let out = folham(&["bracket", s(&a), "--f", "y3", "--g", "x2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn cohomology_command() {
    let dir = TempDir::new().unwrap();
    let a = example_file(&dir, "EX-A");
    let out = folham(&[
        "cohomology",
        s(&a),
        "--theory",
        "twisted",
        "--k",
        "1",
        "--max-degree",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("twisted k=1 D=1: cochains 8, kernel 7, image in kernel 7, dim 0"));
    let out = folham(&[
        "cohomology",
        s(&a),
        "--theory",
        "basic-derham",
        "--k",
        "0",
        "--max-degree",
        "2",
        "--basis",
    ]);
    assert_eq!(code(&out), 0);
    let out = folham(&[
        "cohomology",
        s(&example_file(&dir, "EX-E")),
        "--theory",
        "twisted",
        "--k",
        "0",
        "--max-degree",
        "1",
    ]);
    assert_eq!(code(&out), 2);
    let out = folham(&[
        "cohomology",
        s(&a),
        "--theory",
        "sheaf",
        "--k",
        "0",
        "--max-degree",
        "1",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn corpus_commands() {
    let out = folham(&["corpus", "list"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 7);
    let out = folham(&["corpus", "run"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(!stdout(&out).contains("MISMATCH"));
    let out = folham(&["corpus", "show", "ex-d"]);
    assert_eq!(stdout(&out), find_example("EX-D").unwrap().json);
    assert_eq!(code(&folham(&["corpus", "show", "EX-Z"])), 2);
}

#[test]
fn malformed_specs_exit_2() {
    let dir = TempDir::new().unwrap();
    let chart = r#""chart": {"q": 2, "p": 1, "transverse": ["x1", "x2"], "leaf": ["y3"], "t": {}}"#;
    let cases = [
        ("truncated", "{".to_string()),
        (
            "negative exponent",
            format!(r#"{{{chart}, "structure": {{"h": {{"1,2": "x1^-1"}}, "k": {{}}}}}}"#),
        ),
        (
            "unknown identifier",
            format!(r#"{{{chart}, "structure": {{"h": {{"1,2": "w"}}, "k": {{}}}}}}"#),
        ),
        (
            "not skew",
            format!(r#"{{{chart}, "structure": {{"h": {{"1,2": "1", "2,1": "1"}}, "k": {{}}}}}}"#),
        ),
        (
            "unknown field",
            format!(r#"{{{chart}, "structure": {{"h": {{}}, "k": {{}}}}, "colour": 1}}"#),
        ),
        (
            "index out of range",
            format!(r#"{{{chart}, "structure": {{"h": {{"1,3": "1"}}, "k": {{}}}}}}"#),
        ),
    ];
    for (label, text) in cases {
        let path = write(&dir, "bad.json", &text);
        let out = folham(&["verify", s(&path)]);
        assert_eq!(code(&out), 2, "{label}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("folham: "), "{label}");
    }
    assert_eq!(code(&folham(&["verify", "/nonexistent/spec.json"])), 2);
}
