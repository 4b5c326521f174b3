//! Report values and their text rendering. A report is one ordered JSON
//! value; the text format renders the same keys as an indented outline,
//! with multi-line strings (witnesses) as `| `-prefixed blocks.

use homlts_core::exactlin::fmt_scalar;
use homlts_core::structures::VerificationReport;
use serde_json::{json, Map, Value};

/// Violations listed per check before truncation.
pub const MAX_LISTED_VIOLATIONS: usize = 8;

pub type Obj = Map<String, Value>;

/// Outcome flags accumulated while building a report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Status {
    pub failed: bool,
    pub size_cap: bool,
}

impl Status {
    pub fn fail() -> Self {
        Status {
            failed: true,
            size_cap: false,
        }
    }

    pub fn absorb(&mut self, other: Status) {
        self.failed |= other.failed;
        self.size_cap |= other.size_cap;
    }

    pub fn exit_code(self) -> i32 {
        if self.size_cap {
            3
        } else if self.failed {
            1
        } else {
            0
        }
    }

    pub fn label(self) -> &'static str {
        match self.exit_code() {
            0 => "ok",
            3 => "size-cap",
            _ => "fail",
        }
    }
}

fn fmt_list(v: &[homlts_core::exactlin::Scalar]) -> String {
    let items: Vec<String> = v.iter().map(fmt_scalar).collect();
    format!("[{}]", items.join(", "))
}

/// `{status, violations, details}` for a verification report.
pub fn verification(report: &VerificationReport) -> (Value, Status) {
    let mut obj = Obj::new();
    obj.insert("status".into(), json!(if report.passed() { "pass" } else { "fail" }));
    obj.insert("violations".into(), json!(report.violations().len()));
    if !report.passed() {
        let details: Vec<Value> = report
            .violations()
            .iter()
            .take(MAX_LISTED_VIOLATIONS)
            .map(|v| {
                json!(format!(
                    "{} at {:?}: {} != {}",
                    v.axiom,
                    v.indices,
                    fmt_list(&v.lhs),
                    fmt_list(&v.rhs)
                ))
            })
            .collect();
        obj.insert("details".into(), Value::Array(details));
    }
    let status = if report.passed() {
        Status::default()
    } else {
        Status::fail()
    };
    (Value::Object(obj), status)
}

/// `{status: error, error}` for a failed computation.
pub fn error_entry(err: &homlts_core::Error) -> (Value, Status) {
    let size_cap = matches!(err, homlts_core::Error::SizeCap { .. });
    let value = json!({
        "status": if size_cap { "size-cap" } else { "error" },
        "error": err.to_string(),
    });
    let status = Status {
        failed: !size_cap,
        size_cap,
    };
    (value, status)
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report values serialize");
    s.push('\n');
    s
}

pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(map) => render_object(map, 0, &mut out),
        other => {
            out.push_str(&scalar(other));
            out.push('\n');
        }
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn is_block(v: &Value) -> bool {
    matches!(v, Value::String(s) if s.contains('\n'))
}

fn render_block(s: &str, pad: &str, out: &mut String) {
    for line in s.trim_end_matches('\n').lines() {
        out.push_str(pad);
        out.push_str("| ");
        out.push_str(line);
        out.push('\n');
    }
}

fn render_value_after_key(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Object(m) if !m.is_empty() => {
            out.push('\n');
            render_object(m, indent + 1, out);
        }
        Value::Array(a) if !a.is_empty() => {
            out.push('\n');
            render_array(a, indent + 1, out);
        }
        Value::Object(_) => out.push_str(" {}\n"),
        Value::Array(_) => out.push_str(" []\n"),
        s if is_block(s) => {
            out.push('\n');
            render_block(s.as_str().unwrap_or_default(), &pad, out);
        }
        s => {
            out.push(' ');
            out.push_str(&scalar(s));
            out.push('\n');
        }
    }
}

fn render_object(map: &Obj, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    for (k, v) in map {
        out.push_str(&pad);
        out.push_str(k);
        out.push(':');
        render_value_after_key(v, indent, out);
    }
}

fn render_array(items: &[Value], indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    for item in items {
        match item {
            Value::Object(m) if !m.is_empty() => {
                let mut inner = String::new();
                render_object(m, indent + 1, &mut inner);
                let strip = "  ".repeat(indent + 1);
                let rest = inner.strip_prefix(&strip).unwrap_or(&inner);
                out.push_str(&pad);
                out.push_str("- ");
                out.push_str(rest);
            }
            s if is_block(s) => {
                out.push_str(&pad);
                out.push_str("-\n");
                render_block(s.as_str().unwrap_or_default(), &format!("{pad}  "), out);
            }
            s => {
                out.push_str(&pad);
                out.push_str("- ");
                out.push_str(&scalar(s));
                out.push('\n');
            }
        }
    }
}

/// The `| `-prefixed lines of a text report with the prefix removed, in
/// order of appearance; witness blocks concatenate into instance text.
pub fn witness_text(report: &str) -> String {
    let mut out = String::new();
    for line in report.lines() {
        if let Some(rest) = line.trim_start().strip_prefix("| ") {
            out.push_str(rest);
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rendering_layout() {
        let v = json!({
            "command": "verify",
            "checks": [{"name": "a", "status": "pass"}, "plain"],
            "witness": "[cochain f]\ndegree = 1\n",
            "empty": [],
        });
        let text = render_text(&v);
        assert_eq!(
            text,
            "command: verify\nchecks:\n  - name: a\n    status: pass\n  - plain\nwitness:\n  | [cochain f]\n  | degree = 1\nempty: []\n"
        );
        assert_eq!(witness_text(&text), "[cochain f]\ndegree = 1\n");
    }

    #[test]
    fn status_codes() {
        let mut s = Status::default();
        assert_eq!(s.exit_code(), 0);
        s.absorb(Status::fail());
        assert_eq!(s.exit_code(), 1);
        s.absorb(Status {
            failed: false,
            size_cap: true,
        });
        assert_eq!(s.exit_code(), 3);
    }
}
