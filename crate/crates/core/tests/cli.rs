use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_syncreach"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(family: &str, n: Option<&str>) -> String {
    let mut args = vec!["gen", family];
    if let Some(n) = n {
        args.extend(["--n", n]);
    }
    let o = run(&args);
    assert!(o.status.success());
    stdout(&o)
}

#[test]
fn gen_and_sync_from_stdin() {
    let c4 = gen("cerny", Some("4"));
    assert_eq!(c4, "states: 4\nletters: a b\na: 1 2 3 1\nb: 2 3 4 1\n");
    let o = run_stdin(&["sync", "-"], &c4);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "synchronizing: true\nlength: 9\nword: abbbabbba\n");
    let o = run_stdin(&["sync", "-", "--quiet"], &c4);
    assert_eq!(stdout(&o), "abbbabbba\n");
    let o = run_stdin(&["sync", "-", "--json"], &c4);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["length"], 9);
}

#[test]
fn non_synchronizing_input() {
    let o = run_stdin(&["sync", "-"], "states: 2\nletters: a\na: 2 1\n");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "synchronizing: false\n");
}

#[test]
fn gen_writes_file() {
    let dir = std::env::temp_dir().join(format!("syncreach-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p2n7.txt");
    let o = run(&["gen", "p2n", "--n", "7", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("states: 7\nletters: a b c\n"));
    let o = run(&["export", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), text);
}

#[test]
fn reach_exact_and_into() {
    let f5 = gen("fig5", None);
    let o = run_stdin(&["reach", "-", "--target", " 1, 2 ,3 ", "--into"], &f5);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("reachable: true\nlength: 6\n"), "{out}");
    let o = run_stdin(&["reach", "-", "--target", "1,2,3"], &f5);
    assert!(stdout(&o).contains("reachable: false"));
    let o = run_stdin(&["reach", "-", "--target", "1,2,3,4"], &f5);
    assert!(stdout(&o).contains("length: 0\nword: ε\n"));
}

#[test]
fn gamma1_outputs() {
    let f2 = gen("fig2", None);
    let o = run_stdin(&["gamma1", "-", "--witnesses", "--check-scc"], &f2);
    assert_eq!(
        stdout(&o),
        "1 2 b\n1 3 ab\n2 1 cc\n2 3 c\n3 1 cca\n3 2 a\nstrongly connected: true\n"
    );
    let o = run_stdin(&["gamma1", "-", "--dot"], &f2);
    assert!(stdout(&o).starts_with("digraph"));
    let o = run_stdin(&["gamma1", "-", "--json"], &f2);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["strongly_connected"], true);
}

#[test]
fn complete_reachability_verdicts() {
    let o = run_stdin(&["cr", "-"], &gen("bv", None));
    assert!(stdout(&o).contains("completely reachable: true"));
    let o = run_stdin(&["cr", "-"], &gen("p2n", Some("7")));
    let out = stdout(&o);
    assert!(out.contains("completely reachable: false"));
    assert!(out.contains("missing: "));
}

#[test]
fn audit_reports() {
    let o = run_stdin(&["audit-don", "-"], &gen("cerny", Some("4")));
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "# variant=exact n=4 checked=14 violations=0\nsubset\tsize\tdist\tbound\tviolated\n"
    );
    let o = run_stdin(&["audit-don", "-", "--into", "--json"], &gen("fig5", None));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["violations"][0]["subset"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["violations"][0]["dist"], 6);
}

#[test]
fn export_dot() {
    let o = run_stdin(&["export", "-", "--dot"], "states: 2\nletters: a b\na: 2 2\nb: 2 2\n");
    assert_eq!(
        stdout(&o),
        "digraph {\n  q1;\n  q2;\n  q1 -> q2 [label=\"a,b\"];\n  q2 -> q2 [label=\"a,b\"];\n}\n"
    );
}

#[test]
fn verify_subset_is_deterministic() {
    let a = run(&["verify", "--only", "fig2,prop4"]);
    let b = run(&["verify", "--only", "fig2,prop4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("# 2 passed, 0 failed, 0 inconclusive\n"));
    let o = run(&["verify", "--only", "random", "--trials", "5", "--seed", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["results"][0]["status"], "pass");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--only", "nope"]).status.code(), Some(2));
    let c4 = gen("cerny", Some("4"));
    assert_eq!(run_stdin(&["reach", "-", "--target", "9"], &c4).status.code(), Some(2));
    let o = run_stdin(&["sync", "-"], "states: 2\nletters: a\na: 1 3\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(run(&["sync", "/nonexistent/file"]).status.code(), Some(1));
    let o = run_stdin(&["--cap", "3", "sync", "-"], &c4);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}
