use std::path::Path;
use std::process::{Command, Output};

use mknf_testkit::fixtures;

fn mknf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mknf")).args(args).output().expect("binary runs")
}

fn with_kb(name: &str, rest: &[&str]) -> Output {
    let (rules, onto) = fixtures::paths(name);
    let mut args = vec!["--rules".to_string(), path(&rules), "--onto".to_string(), path(&onto)];
    args.extend(rest.iter().map(|s| s.to_string()));
    mknf(&args.iter().map(String::as_str).collect::<Vec<_>>())
}

fn path(p: &Path) -> String {
    p.to_str().expect("utf-8 path").to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_exit_codes() {
    assert_eq!(with_kb("insurance", &["check"]).status.code(), Some(0));
    let unsafe_kb = with_kb("unsafe", &["check"]);
    assert_eq!(unsafe_kb.status.code(), Some(3));
    assert!(stderr(&unsafe_kb).contains('X'));
    let missing = mknf(&["--rules", "/nonexistent/k.mknf", "check"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("/nonexistent/k.mknf"));
}

#[test]
fn parse_errors_exit_2() {
    let dir = std::env::temp_dir().join(format!("mknf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let rules = dir.join("bad.mknf");
    std::fs::write(&rules, "p(X :- q(X).\n").unwrap();
    let out = mknf(&["--rules", rules.to_str().unwrap(), "check"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));
}

#[test]
fn query_commands_need_both_files() {
    let (rules, _) = fixtures::paths("insurance");
    let out = mknf(&["--rules", rules.to_str().unwrap(), "query", "surcharge(john)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ground_and_open_queries() {
    assert_eq!(stdout(&with_kb("insurance", &["query", "surcharge(john)"])), "true\n");
    assert_eq!(stdout(&with_kb("customs", &["query", "inspect(s1)"])), "false\n");
    assert_eq!(stdout(&with_kb("customs", &["query", "safeCountry(atlantis)"])), "undefined\n");
    let open = stdout(&with_kb("insurance", &["query", "discount(X)"]));
    assert_eq!(open, "X=ann: false\nX=bill: false\nX=bob: true\nX=john: false\n");
    let tsv = stdout(&with_kb("insurance", &["--format", "tsv", "query", "discount(X)"]));
    assert!(tsv.lines().any(|l| l == "discount(bob)\ttrue"));
}

#[test]
fn model_sections() {
    let out = stdout(&with_kb("object", &["model"]));
    assert_eq!(out, "true:\n  a(object)\n  b(object)\n  p(object)\nundefined:\nfalse:\n  c(object)\n");
    let looped = stdout(&with_kb("loop", &["--engine", "both", "model"]));
    let undefined = looped.split("undefined:\n").nth(1).unwrap().split("false:").next().unwrap();
    assert!(undefined.contains("p(a)"));
}

#[test]
fn both_engines_agree_on_fixtures() {
    for name in fixtures::safe_names() {
        let out = with_kb(name, &["--engine", "both", "model"]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
    }
}

#[test]
fn entails_against_the_ontology() {
    assert_eq!(stdout(&with_kb("insurance", &["entails", "married(bill)"])), "entailed\n");
    assert_eq!(stdout(&with_kb("customs", &["entails", "neg(inspect(s2))"])), "entailed\n");
    assert_eq!(stdout(&with_kb("customs", &["entails", "inspect(s1)"])), "not-entailed\n");
    let non_dl = with_kb("insurance", &["entails", "surcharge(john)"]);
    assert_eq!(non_dl.status.code(), Some(2));
}

#[test]
fn trace_layers_end_on_an_even_outer_index() {
    let out = with_kb("insurance", &["--trace", "2", "query", "surcharge(john)"]);
    let err = stderr(&out);
    let last = err.lines().rfind(|l| l.starts_with("outer ")).unwrap();
    let outer: usize = last.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert_eq!(outer % 2, 0, "{err}");
    assert!(err.contains("tableau calls:"));
}

#[test]
fn caps_exit_5() {
    let out = with_kb("insurance", &["--max-individuals", "1", "query", "surcharge(john)"]);
    assert_eq!(out.status.code(), Some(5), "{}", stderr(&out));
    let out = with_kb("loop", &["--max-outer", "1", "model"]);
    assert_eq!(out.status.code(), Some(5), "{}", stderr(&out));
}

#[test]
fn repl_answers_each_line() {
    use std::io::Write;
    use std::process::Stdio;
    let (rules, onto) = fixtures::paths("insurance");
    let mut child = Command::new(env!("CARGO_BIN_EXE_mknf"))
        .args(["--rules", rules.to_str().unwrap(), "--onto", onto.to_str().unwrap(), "repl"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"surcharge(john)\n\nsurcharge(bill)\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout(&out), "true\nfalse\n");
}
