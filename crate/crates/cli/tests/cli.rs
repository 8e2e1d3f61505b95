use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_serre-scope")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn analyze_a2_passes_with_json() {
    let (code, out, _) = run(&["analyze", "corpus:A2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "serre-scope.report/1");
    assert_eq!(v["classification"]["label"], "twisted CY (3,1)");
}

#[test]
fn too_short_window_fails_an_identity() {
    let (code, out, err) = run(&["analyze", "corpus:A2", "--n-max", "3", "--format", "md"]);
    assert_eq!(code, 2, "{err}");
    assert!(out.contains("- ✗ `entropy-line"));
}

#[test]
fn parse_errors_exit_one_with_position() {
    let dir = std::env::temp_dir().join("serre-scope-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.alg");
    std::fs::write(&bad, "algebra x {\n vertices: 1, 2;\n arrows: a: 1 -> 2;\n relations: a*zz\n}\n").unwrap();
    let (code, _, err) = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains(":4:15: unknown arrow `zz`"), "{err}");
    assert_eq!(run(&["analyze"]).0, 1);
    assert_eq!(run(&["analyze", "corpus:nope"]).0, 1);
}

#[test]
fn tensor_writes_the_square() {
    let dir = std::env::temp_dir().join("serre-scope-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("square.alg");
    let (code, _, _) = run(&["tensor", "corpus:A2", "corpus:A2", "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, text, _) = run(&["verify", out.to_str().unwrap(), "--t=-1,0,1/2,1"]);
    assert_eq!(code, 0);
    assert!(text.contains("twisted CY (3,2)"));
    assert!(text.lines().skip(1).all(|l| l.trim_start().starts_with('✓')));
}

#[test]
fn corpus_list_and_csv() {
    let (code, out, _) = run(&["corpus", "list"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("kronecker2 ")));
    let (code, csv, _) = run(&["analyze", "corpus:k", "corpus:A3", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.starts_with("name,sha256,"));
}
