use std::process::{Command, Output};

use markov_fractions::{Fraction, QuadraticSurd};
use serde_json::Value;

fn markov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_markov"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = markov(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&all)).unwrap()
}

#[test]
fn congruence_text() {
    assert_eq!(stdout(&["congruence", "37666"]), "2337 15571 22095 35329\n");
}

#[test]
fn enumerate_json() {
    let v = json(&["enumerate", "--depth", "2"]);
    assert_eq!(v["command"], "enumerate");
    assert_eq!(v["status"], "ok");
    let fractions: Vec<&str> = v["outputs"]["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["fraction"].as_str().unwrap())
        .collect();
    assert_eq!(
        fractions,
        ["2/5", "5/13", "12/29", "13/34", "75/194", "179/433", "70/169"]
    );
}

#[test]
fn slope_record() {
    let v = json(&["slope", "13/34"]);
    let o = &v["outputs"];
    assert_eq!(o["exceptional"], "yes");
    assert_eq!((o["q"].as_str(), o["p"].as_str()), (Some("34"), Some("13")));
    assert_eq!((o["s"].as_str(), o["c2"].as_str()), (Some("5"), Some("99")));
    assert_eq!(o["form"], serde_json::json!(["34", "76", "-34"]));
}

#[test]
fn emitted_tokens_parse_back() {
    let v = json(&["interval", "2/5", "--freeness-bound", "1000000"]);
    let o = &v["outputs"];
    assert_eq!(o["free"], "yes");
    for key in ["lo", "hi", "length", "lagrange"] {
        let text = o[key].as_str().unwrap();
        let surd: QuadraticSurd = text.parse().unwrap();
        assert_eq!(surd.to_string(), text);
    }
    let v = json(&["mcshane", "--depth", "4", "--precision", "12"]);
    let enc: Vec<Fraction> = v["outputs"]["enclosure"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t.as_str().unwrap().parse().unwrap())
        .collect();
    assert!(enc[0] < enc[1] && enc[1] < Fraction::half());
    let m = json(&["mu", "3/5"]);
    let x: Fraction = m["outputs"]["mu"].as_str().unwrap().parse().unwrap();
    assert_eq!(x.to_string(), m["outputs"]["mu"]);
}

#[test]
fn subcommands_run() {
    assert_eq!(stdout(&["epsilon", "1/2^2"]), "x: 1/2^2\nepsilon: 2/5\n");
    for method in ["farey", "salem", "word"] {
        assert!(stdout(&["qmark", "2/5", "--method", method]).contains("qmark: 3/2^3"));
    }
    assert!(stdout(&["approx-const", "1/2"]).contains("constant: 1/2"));
    assert!(stdout(&["saltus", "1/2", "--depth", "6", "--precision", "10"]).contains("mu: 2/5"));
    assert!(stdout(&["lyapunov", "--word", "const", "--steps", "10"]).contains("estimate: "));
    assert!(stdout(&["unicity", "--depth", "8"]).contains("duplicate denominators: none"));
    assert!(stdout(&["triples", "--equation", "quadric", "--depth", "1"]).contains("(3, 1, 1)"));
    let csv = stdout(&["plot-mu", "--grid", "8", "--depth", "6", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 10);
    assert!(csv.starts_with("x,mu_step\n0/1,"));
}

#[test]
fn verify_passes() {
    let out = stdout(&["verify", "--depth", "6"]);
    assert!(out.ends_with("all invariants hold\n"), "{out}");
    assert!(out.contains("relation:markov_equation"));
}

#[test]
fn exit_codes() {
    let bad = markov(&["mu", "1/x"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("1/x"));
    assert_eq!(markov(&["mu", "3/2"]).status.code(), Some(1));
    assert_eq!(
        markov(&["triples", "--equation", "cubic", "--depth", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(markov(&["interval", "1/3"]).status.code(), Some(1));
    let v: Value = serde_json::from_slice(&markov(&["slope", "1/0", "--format", "json"]).stdout)
        .unwrap_or(Value::Null);
    assert_eq!(v, Value::Null);
    let err: Value =
        serde_json::from_slice(&markov(&["interval", "1/3", "--format", "json"]).stdout).unwrap();
    assert_eq!(err["status"], "error");
    assert!(err["error_detail"]
        .as_str()
        .unwrap()
        .contains("not an exceptional slope"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["verify", "--depth", "7", "--format", "json"],
        vec!["enumerate", "--depth", "9", "--format", "csv"],
        vec![
            "mcshane",
            "--depth",
            "10",
            "--precision",
            "20",
            "--format",
            "json",
        ],
    ] {
        let first = stdout(&args);
        let mut threaded = args.clone();
        threaded.extend(["--threads", "1"]);
        assert_eq!(first, stdout(&args));
        assert_eq!(first, stdout(&threaded));
    }
}
