use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn nilreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilreg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(args: &[&str]) -> (i32, Value) {
    let o = nilreg(args);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

/// Normal strings of length at most `len` for `x^3 = 0, xqx = x, qxq = q`.
fn oracle_basis(len: usize) -> BTreeSet<String> {
    let mut all = vec![String::new()];
    for _ in 0..len {
        let next: Vec<String> = all.iter().flat_map(|w| ["x", "q"].map(|c| format!("{w}{c}"))).collect();
        all.extend(next);
    }
    all.sort();
    all.dedup();
    all.into_iter().filter(|w| !w.contains("xxx") && !w.contains("xqx") && !w.contains("qxq")).collect()
}

#[test]
fn reduce_examples() {
    let o = nilreg(&["reduce", "q^2 x q x q^3 x^2 q"]);
    assert_eq!(stdout(&o).trim(), "q^4 x^2 q");
    assert_eq!(stdout(&nilreg(&["reduce", "x^3"])).trim(), "0");
    assert_eq!(stdout(&nilreg(&["reduce", "1"])).trim(), "1");
    assert_eq!(stdout(&nilreg(&["mul", "q^3 x^2 q", "x q^4 x^2"])).trim(), "q^3 x^2 q^4 x^2");
    let o = nilreg(&["reduce", "x q", "--json"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["normal_form"], "x q");
}

#[test]
fn basis_counts() {
    for len in [0usize, 2, 3, 5] {
        let out = stdout(&nilreg(&["basis", &len.to_string()]));
        let lines: Vec<&str> = out.lines().collect();
        let expected = oracle_basis(len).len();
        assert_eq!(*lines.last().unwrap(), format!("count: {expected}"));
        assert_eq!(lines.len(), expected + 1);
    }
    assert_eq!(stdout(&nilreg(&["basis", "0"])).lines().next(), Some("1"));
}

#[test]
fn verify_examples() {
    let (code, v) = report(&["verify", "separativity", "--json"]);
    assert_eq!((code, v["status"].as_str()), (0, Some("pass")));
    let (code, v) = report(&["verify", "unit-regular-search", "--max-word-len", "3", "--field", "gf2", "--json"]);
    assert_eq!((code, v["status"].as_str()), (0, Some("exhausted")));
    assert!(v.get("witness").is_none());
    assert_eq!(v["candidates_examined"], 128);
    let (code, v) = report(&["verify", "determinant", "--field", "gf2", "--json"]);
    assert_eq!((code, v["status"].as_str()), (0, Some("pass")));
    for check in ["regularity", "types-lemma", "confluence", "phi-faithful"] {
        let (code, v) = report(&["verify", check, "--json"]);
        assert_eq!((code, v["status"].as_str()), (0, Some("pass")), "{check}");
        assert_eq!(v["check"], check);
    }
    let (code, _) = report(&["verify", "n2-variant", "--n", "2", "--json"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nilreg(&["verify", "no-such-check"]).status.code(), Some(2));
    assert_eq!(nilreg(&["reduce", "x + + q"]).status.code(), Some(2));
    assert_eq!(nilreg(&["verify", "tau-forms", "--n", "4"]).status.code(), Some(2));
    assert_eq!(nilreg(&["verify", "n2-variant"]).status.code(), Some(2));
    assert_eq!(nilreg(&["reduce", "x", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn seeded_reports_are_reproducible() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v.to_string()
    };
    for args in [
        ["verify", "tau-forms", "--trials", "300", "--seed", "11"],
        ["verify", "primeness", "--trials", "200", "--seed", "11"],
    ] {
        let mut full: Vec<&str> = args.to_vec();
        full.push("--json");
        let (c1, a) = report(&full);
        let (c2, b) = report(&full);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(strip(a), strip(b));
        full.extend(["--workers", "1"]);
        let (_, c) = report(&full);
        assert_eq!(c["status"], "pass");
    }
}

#[test]
fn matrix_commands() {
    assert_eq!(stdout(&nilreg(&["phi", "q x^2"])).trim(), "[[a, 0], [0, 0]]");
    assert_eq!(stdout(&nilreg(&["phi", "q^2 x"])).trim(), "[[b, 0], [0, 0]]");
    assert_eq!(stdout(&nilreg(&["member", "[[0, 1], [0, 0]]"])).trim(), "not in T");
    let o = nilreg(&["member", "[[b, 1 - b a], [0, 0]]", "--json"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["in_T"], true);
    assert_eq!(v["s12"], "1");
}
