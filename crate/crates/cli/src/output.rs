use clap::ValueEnum;
use serde_json::{Map, Value};

use crate::CliError;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Adds the `schema` field to a JSON object.
pub fn versioned(value: Value) -> Value {
    match value {
        Value::Object(mut map) => {
            map.insert("schema".into(), Value::from(SCHEMA_VERSION));
            Value::Object(map)
        }
        other => {
            let mut map = Map::new();
            map.insert("schema".into(), Value::from(SCHEMA_VERSION));
            map.insert("value".into(), other);
            Value::Object(map)
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Renders a report. CSV output is one `field,value` line per top-level key;
/// nested values are written as compact JSON.
pub fn render_report(value: Value, format: Format) -> Result<String, CliError> {
    let value = versioned(value);
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&value)? + "\n"),
        Format::Csv => {
            let mut out = String::from("field,value\n");
            if let Value::Object(map) = &value {
                for (k, v) in map {
                    out.push_str(&csv_field(k));
                    out.push(',');
                    out.push_str(&csv_field(&scalar_text(v)));
                    out.push('\n');
                }
            }
            Ok(out)
        }
    }
}

/// Renders rows under a header; JSON output is an array of objects keyed by
/// the header names, wrapped with `extra` fields.
pub fn render_table(
    header: &[&str],
    rows: &[Vec<Value>],
    extra: Value,
    format: Format,
) -> Result<String, CliError> {
    match format {
        Format::Csv => {
            let mut out = header.join(",");
            out.push('\n');
            for row in rows {
                let cells: Vec<String> = row.iter().map(|v| csv_field(&scalar_text(v))).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            Ok(out)
        }
        Format::Json => {
            let records: Vec<Value> = rows
                .iter()
                .map(|row| {
                    Value::Object(
                        header
                            .iter()
                            .zip(row)
                            .map(|(h, v)| (h.to_string(), v.clone()))
                            .collect(),
                    )
                })
                .collect();
            let mut map = match extra {
                Value::Object(m) => m,
                _ => Map::new(),
            };
            map.insert("rows".into(), Value::Array(records));
            render_report(Value::Object(map), Format::Json)
        }
    }
}
