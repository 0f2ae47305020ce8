//! Rendering of reports as JSON, CSV or plain text.

use serde_json::Value;

use crate::args::Format;
use crate::error::{CliError, CliResult};

/// A finished report: the JSON document plus how to flatten it.
#[derive(Debug, Clone)]
pub struct Report {
    pub value: Value,
    /// `(instance, sub-document)` pairs for CSV and generic text output.
    pub instances: Vec<(String, Value)>,
    /// Hand-written text rendering, when the generic one is not enough.
    pub text: Option<String>,
    /// Exit code to use after printing (nonzero for failed checks).
    pub code: i32,
}

impl Report {
    pub fn single(label: impl Into<String>, value: Value) -> Self {
        Report {
            instances: vec![(label.into(), value.clone())],
            value,
            text: None,
            code: 0,
        }
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.value)
                    .map_err(|e| CliError::usage(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::usage(e.to_string());
                w.write_record(["instance", "metric", "value"]).map_err(io)?;
                for (label, v) in &self.instances {
                    for (metric, leaf) in flatten(v) {
                        w.write_record([label.as_str(), &metric, &leaf]).map_err(io)?;
                    }
                }
                let bytes = w.into_inner().map_err(|e| CliError::usage(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::usage(e.to_string()))
            }
            Format::Text => Ok(match &self.text {
                Some(t) => t.clone(),
                None => {
                    let mut out = String::new();
                    for (label, v) in &self.instances {
                        for (metric, leaf) in flatten(v) {
                            out.push_str(&format!("{label} {metric} = {leaf}\n"));
                        }
                    }
                    out
                }
            }),
        }
    }
}

/// Leaf values keyed by dotted paths (array positions are indices).
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk(v, String::new(), &mut out);
    out
}

fn walk(v: &Value, path: String, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, x) in map {
                walk(x, join(k), out);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, x) in items.iter().enumerate() {
                walk(x, join(&i.to_string()), out);
            }
        }
        Value::String(s) => out.push((path, s.clone())),
        other => out.push((path, other.to_string())),
    }
}
