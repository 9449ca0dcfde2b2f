use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::Format;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub got: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, expected: f64, got: f64, pass: bool) -> Self {
        Check {
            name: name.to_owned(),
            expected,
            got,
            pass,
        }
    }

    /// `|got − expected| ≤ tolerance`.
    pub fn near(name: &str, expected: f64, got: f64, tolerance: f64) -> Self {
        Self::new(name, expected, got, (got - expected).abs() <= tolerance)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub results: Vec<Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_owned(), s.clone())),
        Value::Null => out.push((prefix.to_owned(), String::new())),
        other => out.push((prefix.to_owned(), other.to_string())),
    }
}

fn csv_bytes(results: &[Value]) -> io::Result<Vec<u8>> {
    let rows: Vec<Vec<(String, String)>> = results
        .iter()
        .map(|r| {
            let mut row = Vec::new();
            flatten("", r, &mut row);
            row
        })
        .collect();
    let mut header: Vec<String> = Vec::new();
    for row in &rows {
        for (k, _) in row {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for row in &rows {
        let cells: Vec<&str> = header
            .iter()
            .map(|h| {
                row.iter()
                    .find(|(k, _)| k == h)
                    .map_or("", |(_, v)| v.as_str())
            })
            .collect();
        w.write_record(&cells)?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

fn human(report: &Report) -> String {
    let mut s = format!("{}\n", report.command);
    for (i, r) in report.results.iter().enumerate() {
        let mut row = Vec::new();
        flatten("", r, &mut row);
        s.push_str(&format!("result {}:\n", i + 1));
        for (k, v) in row {
            s.push_str(&format!("  {k}: {v}\n"));
        }
    }
    for c in &report.checks {
        s.push_str(&format!(
            "[{}] {}: got {} (expected {})\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.got,
            c.expected
        ));
    }
    s
}

pub fn render(report: &Report, format: Format) -> io::Result<Vec<u8>> {
    Ok(match format {
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(report)?;
            v.push(b'\n');
            v
        }
        Format::Csv => {
            for c in report.checks.iter().filter(|c| !c.pass) {
                eprintln!("check failed: {} (got {}, expected {})", c.name, c.got, c.expected);
            }
            csv_bytes(&report.results)?
        }
        Format::Human => human(report).into_bytes(),
    })
}

pub fn emit(bytes: &[u8], out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => File::create(path)?.write_all(bytes),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()
        }
    }
}

/// Serializes `value` and asserts it is a JSON object.
pub fn object<T: Serialize>(value: &T) -> Value {
    match serde_json::to_value(value) {
        Ok(Value::Object(map)) => Value::Object(map),
        Ok(other) => {
            let mut map = Map::new();
            map.insert("value".into(), other);
            Value::Object(map)
        }
        Err(e) => panic!("serializable report: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_unions_nested_keys() {
        let rows = vec![json!({"a": 1, "b": {"c": "x"}}), json!({"a": 2, "d": null})];
        let text = String::from_utf8(csv_bytes(&rows).unwrap()).unwrap();
        assert_eq!(text, "a,b.c,d\n1,x,\n2,,\n");
    }
}
