use std::io::Write;

use qf2::field::{Elem, Field};
use qf2::theoremlab::TheoremReport;
use serde_json::{json, Value};

use crate::cli::Cli;

pub fn vector(f: &Field, v: &[Elem]) -> Vec<String> {
    v.iter().map(|x| f.fmt_elem(x)).collect()
}

pub fn tuple(f: &Field, v: &[Elem]) -> String {
    format!("({})", vector(f, v).join(", "))
}

pub fn emit(args: &Cli, value: &Value, text: impl FnOnce() -> String) {
    if args.json {
        out(&serde_json::to_string_pretty(value).expect("json"));
    } else {
        out(&text());
    }
}

/// One compact JSON object per line.
pub fn emit_line(args: &Cli, value: &Value, text: impl FnOnce() -> String) {
    if args.json {
        out(&value.to_string());
    } else {
        out(&text());
    }
}

/// Writes a line, ignoring a closed stdout.
fn out(s: &str) {
    let _ = writeln!(std::io::stdout(), "{s}");
}

pub fn error(args: &Cli, e: &qf2::Error) {
    if args.json {
        out(&json!({ "schema": "qf2.error/1", "code": e.code(), "message": e.to_string() }).to_string());
    }
    eprintln!("error[E{}]: {e}", e.code());
}

pub fn report_text(r: &TheoremReport) -> String {
    let mut s = format!("{} {}\n  outcome: {:?}\n", r.theorem, r.instance, r.outcome());
    let w = r.conditions.iter().map(|c| c.id.chars().count()).max().unwrap_or(0);
    for c in &r.conditions {
        let mark = if c.id == r.headline { "*" } else { " " };
        s += &format!("  {mark}{:<w$}  {:<9}  {}\n", c.id, format!("{:?}", c.status), c.statement);
    }
    for c in r.contradictions() {
        s += &format!("  contradiction: {c}\n");
    }
    s.pop();
    s
}
