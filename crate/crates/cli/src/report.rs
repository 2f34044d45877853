use std::fmt::Write as _;
use std::time::Instant;

use anyhow::Result;
use hsing_core::NuValue;
use serde::Serialize;
use serde_json::Value;

use crate::request::{Echo, Format};

pub const SCHEMA: &str = "hsing-report/1";

pub enum Outcome {
    Ok(Value),
    /// Computed, but the result does not meet expectations (suite mismatch).
    Failed(Value),
    Refused(String),
    Error(String),
}

impl Outcome {
    pub fn from_error(e: &hsing_core::Error) -> Self {
        if e.is_refusal() {
            Outcome::Refused(e.to_string())
        } else {
            Outcome::Error(e.to_string())
        }
    }
}

#[derive(Serialize)]
struct Engine {
    name: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct ErrorBlock {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
pub struct Report {
    schema: &'static str,
    engine: Engine,
    command: &'static str,
    request: Echo,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorBlock>,
    elapsed_ms: f64,
}

impl Report {
    pub fn new(command: &'static str, request: Echo, outcome: Outcome, start: Instant) -> Self {
        let (status, result, error) = match outcome {
            Outcome::Ok(v) => ("ok", Some(v), None),
            Outcome::Failed(v) => ("failed", Some(v), None),
            Outcome::Refused(message) => {
                ("refused", None, Some(ErrorBlock { kind: "refusal", message }))
            }
            Outcome::Error(message) => ("error", None, Some(ErrorBlock { kind: "error", message })),
        };
        Report {
            schema: SCHEMA,
            engine: Engine { name: "hsing", version: env!("CARGO_PKG_VERSION") },
            command,
            request,
            status,
            result,
            error,
            elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            "ok" => 0,
            "refused" => 2,
            _ => 1,
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        let value = serde_json::to_value(self)?;
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(&value)?,
            Format::Text => {
                let mut out = String::new();
                text(&value, 0, &mut out);
                out.trim_end().to_string()
            }
        })
    }
}

/// `{kind, num, den}` as a value, `{num, den}` as a fraction.
fn scalar_form(v: &Value) -> Option<String> {
    let obj = v.as_object()?;
    if obj.contains_key("kind") && obj.keys().all(|k| ["kind", "num", "den"].contains(&k.as_str())) {
        return serde_json::from_value::<NuValue>(v.clone()).ok().map(|n| n.to_string());
    }
    if obj.len() == 2 && obj.contains_key("num") && obj.contains_key("den") {
        let show = |x: &Value| x.as_str().map_or_else(|| x.to_string(), String::from);
        return Some(if obj["den"] == 1 {
            show(&obj["num"])
        } else {
            format!("{}/{}", show(&obj["num"]), show(&obj["den"]))
        });
    }
    None
}

fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar_form(v) {
        return Some(s);
    }
    match v {
        Value::Null => Some("-".into()),
        Value::String(s) => Some(s.clone()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array() || scalar_form(x).is_some()) => {
            let parts: Vec<String> = xs.iter().filter_map(inline).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        Value::Array(xs) if xs.iter().all(|x| x.as_array().is_some_and(|r| r.iter().all(|y| scalar_form(y).is_some()))) => {
            let parts: Vec<String> = xs.iter().filter_map(inline).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match inline(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                match inline(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        text(x, depth + 1, out);
                    }
                }
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{}", inline(v).unwrap_or_default());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn values_render_inline() {
        assert_eq!(inline(&json!({"kind": "exact", "num": 5, "den": 2})).unwrap(), "5/2");
        assert_eq!(inline(&json!({"kind": "infinite"})).unwrap(), "infinity");
        assert_eq!(inline(&json!({"num": 3, "den": 1})).unwrap(), "3");
        assert_eq!(inline(&json!([{"num": 1, "den": 2}, {"num": 2, "den": 1}])).unwrap(), "[1/2, 2]");
        assert!(inline(&json!({"a": 1})).is_none());
    }

    #[test]
    fn nested_text() {
        let mut out = String::new();
        text(&json!({"a": {"b": 1}, "c": ["x", "y"]}), 0, &mut out);
        assert_eq!(out, "a:\n  b: 1\nc: [x, y]\n");
    }
}
