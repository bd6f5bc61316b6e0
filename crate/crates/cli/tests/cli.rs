use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn qf2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qf2")).args(args).output().unwrap()
}

fn qf2_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qf2"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn witt_example() {
    let o = qf2(&["witt", "[1,1]+[1,1]", "--field", "GF(2)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], "qf2.witt/1");
    assert_eq!((v["i_w"].as_u64(), v["i_d"].as_u64()), (Some(2), Some(0)));
    let text = qf2(&["witt", "[1,1]+[1,1]", "--field", "GF(2)"]);
    assert!(String::from_utf8_lossy(&text.stdout).starts_with("i_W = 2, i_d = 0"));
}

#[test]
fn represent_then_verify() {
    let o = qf2(&["represent", "--form", "[1,1]", "--field", "GF(2)", "--target", "X^2+X+1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let cert = json(&o);
    assert_eq!(cert["schema"], "qf2.certificate/1");
    for key in ["field", "form", "target", "scalar", "power", "vectors"] {
        assert!(cert.get(key).is_some(), "{key}");
    }
    assert_eq!(cert["power"], 1);

    let text = String::from_utf8(o.stdout).unwrap();
    let v = qf2_stdin(&["verify", "--json"], &text);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(json(&v)["pass"], true);

    let mut bad = cert.clone();
    bad["target"] = "X^2+1".into();
    let v = qf2_stdin(&["verify"], &bad.to_string());
    assert_eq!(v.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&v.stdout).starts_with("FAIL"));
}

#[test]
fn verify_reads_files() {
    let o = qf2(&["represent", "--form", "[1,1]+<1>", "--field", "GF(4)", "--target", "X^3+w", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(&o.stdout).unwrap();
    let v = qf2(&["verify", file.path().to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn unrepresentable_target_is_decided() {
    let o = qf2(&["represent", "--form", "[1,1]", "--field", "GF(2)", "--target", "X", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], "qf2.representation/1");
    assert!(v["certificate"].is_null());
    assert_eq!(v["consistent"], true);
}

#[test]
fn counterexamples() {
    let o = qf2(&["counterexamples", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let ls = lines(&o);
    assert_eq!(ls.len(), 3);
    assert!(ls[..2].iter().all(|r| r["schema"] == "qf2.theorem-report/1" && r["consistent"] == true));
    assert_eq!(ls[2]["schema"], "qf2.sweep-summary/1");
}

#[test]
fn exit_codes() {
    let o = qf2(&["isotropy", "[1/X,1/X]", "--field", "GF(2)((X):16)"]);
    assert_eq!(o.status.code(), Some(3));
    let o = qf2(&["isotropy", "<1,t>", "--field", "GF(2)(t)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "anisotropic");
    let o = qf2(&["isotropy", "<1,t", "--field", "GF(2)(t)", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let e = json(&o);
    assert_eq!((e["schema"].as_str(), e["code"].as_u64()), (Some("qf2.error/1"), Some(50)));
    assert_eq!(qf2(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(qf2(&["--help"]).status.code(), Some(0));
}

#[test]
fn checks() {
    let o = qf2(&["check", "isotropy", "--phi", "[1,1]", "--psi", "[1,1]", "--json", "--samples", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["outcome"], "decided");
    assert_eq!(r["instance"]["samples"].as_array().unwrap().len(), 2);

    let o = qf2(&["check", "transfer", "--field", "GF(4)", "--phi", "[1,w]", "--psi", "[1,w]", "--pi", "w", "--json"]);
    assert_eq!(o.status.code(), Some(0));

    let o = qf2(&["check", "sweep", "--max-dim", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let ls = lines(&o);
    let summary = ls.last().unwrap();
    assert_eq!(summary["reports"].as_u64(), Some(ls.len() as u64 - 1));
    assert!(summary["inconsistent"].as_array().unwrap().is_empty());
}

#[test]
fn deterministic() {
    let args = ["check", "stable", "--field", "GF(4)", "--phi", "[1,1]", "--psi", "w*[1,w]", "--json"];
    assert_eq!(qf2(&args).stdout, qf2(&args).stdout);
}

#[test]
fn global_flags_reach_searches() {
    let o = qf2(&["isotropy", "[1,1]+[1,1]", "--field", "GF(2^8)", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("E30"));
}
