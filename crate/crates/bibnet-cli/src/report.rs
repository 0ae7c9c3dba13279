//! Deterministic JSON-shaped analysis reports.
//!
//! Object keys are kept sorted (BTreeMap) and floats print with nine
//! significant digits, so two runs over identical inputs serialize to
//! byte-identical documents. Wall-clock timing is only included on request
//! for exactly that reason.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use bibnet::io::format_float;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Array(Vec<Value>),
    Object(BTreeMap<String, Value>),
}

impl Value {
    pub fn object() -> BTreeMap<String, Value> {
        BTreeMap::new()
    }

    pub fn from_str_slice(items: &[String]) -> Value {
        Value::Array(items.iter().map(|s| Value::Str(s.clone())).collect())
    }

    pub fn float_row(row: &[f64]) -> Value {
        Value::Array(row.iter().map(|&v| Value::Float(v)).collect())
    }

    pub fn float_matrix(rows: &[Vec<f64>]) -> Value {
        Value::Array(rows.iter().map(|r| Value::float_row(r)).collect())
    }

    pub fn int_matrix(rows: &[Vec<i64>]) -> Value {
        Value::Array(
            rows.iter()
                .map(|r| Value::Array(r.iter().map(|&v| Value::Int(v)).collect()))
                .collect(),
        )
    }
}

fn escape_json(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

fn write_value(out: &mut String, value: &Value, indent: usize) {
    match value {
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Int(i) => {
            let _ = write!(out, "{i}");
        }
        Value::Float(f) => out.push_str(&format_float(*f)),
        Value::Str(s) => {
            let _ = write!(out, "\"{}\"", escape_json(s));
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent + 1));
                write_value(out, item, indent + 1);
            }
            out.push('\n');
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            for (i, (key, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent + 1));
                let _ = write!(out, "\"{}\": ", escape_json(key));
                write_value(out, item, indent + 1);
            }
            out.push('\n');
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
    }
}

/// Assemble the full report document.
pub fn render_report(
    command: &str,
    inputs: &[String],
    parameters: BTreeMap<String, Value>,
    result: Value,
    timing_ms: Option<f64>,
) -> String {
    let mut root = BTreeMap::new();
    root.insert("command".to_string(), Value::Str(command.to_string()));
    root.insert("inputs".to_string(), Value::from_str_slice(inputs));
    root.insert("parameters".to_string(), Value::Object(parameters));
    root.insert("result".to_string(), result);
    root.insert("schema_version".to_string(), Value::Str(SCHEMA_VERSION.to_string()));
    root.insert(
        "tool_version".to_string(),
        Value::Str(env!("CARGO_PKG_VERSION").to_string()),
    );
    if let Some(ms) = timing_ms {
        root.insert("timing_ms".to_string(), Value::Float(ms));
    }
    let mut out = String::new();
    write_value(&mut out, &Value::Object(root), 0);
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_keys_and_fixed_floats() {
        let mut params = Value::object();
        params.insert("zeta".into(), Value::Int(1));
        params.insert("alpha".into(), Value::Float(0.25));
        let report = render_report("demo", &["in.tsv".into()], params, Value::Object(Value::object()), None);
        let alpha = report.find("\"alpha\"").unwrap();
        let zeta = report.find("\"zeta\"").unwrap();
        assert!(alpha < zeta);
        assert!(report.contains("2.50000000e-1"));
        assert!(report.contains("\"schema_version\": \"1\""));
    }

    #[test]
    fn strings_are_escaped() {
        let mut params = Value::object();
        params.insert("label".into(), Value::Str("a\"b\\c\n".into()));
        let report = render_report("demo", &[], params, Value::Object(Value::object()), None);
        assert!(report.contains("a\\\"b\\\\c\\n"));
    }
}
