//! CSV and JSON rendering.
//!
//! CSV: header row, comma separated, LF endings, floats with 17 significant
//! digits. JSON: a single envelope object per run.

use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(_) => Value::Null,
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<u64> for Cell {
    fn from(i: u64) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// 17 significant digits in scientific notation; parses back to the same f64.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub name: &'static str,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &'static str, headers: &[&'static str]) -> Self {
        Table {
            name,
            headers: headers.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn write_csv(&self, out: &mut String) {
        out.push_str(&self.headers.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    for (h, c) in self.headers.iter().zip(row) {
                        obj.insert((*h).to_string(), c.json());
                    }
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// Everything a command produces.
#[derive(Debug, Default)]
pub struct Report {
    pub tables: Vec<Table>,
    /// Extra result fields that only appear in JSON.
    pub extra: Map<String, Value>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn render(&self, format: Format, command: &str, inputs: Value) -> (String, String) {
        let mut stderr = String::new();
        match format {
            Format::Csv => {
                let mut out = String::new();
                for (i, t) in self.tables.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    t.write_csv(&mut out);
                }
                for w in &self.warnings {
                    stderr.push_str(&format!("warning: {w}\n"));
                }
                (out, stderr)
            }
            Format::Json => {
                let mut results = self.extra.clone();
                for t in &self.tables {
                    results.insert(t.name.to_string(), t.to_json());
                }
                let envelope = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": command,
                    "inputs": inputs,
                    "results": Value::Object(results),
                    "warnings": self.warnings,
                });
                let mut out = serde_json::to_string_pretty(&envelope).expect("serializable");
                out.push('\n');
                (out, stderr)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_through_csv() {
        for x in [0.1, 1.0 / 3.0, 8.723_852_254_378_968e-3, 1e-300, 6.02e23, -2.5] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            let mantissa = s.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17);
        }
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new("rows", &["a", "b"]);
        t.push(vec![Cell::Num(1.0), Cell::Int(2)]);
        let r = Report { tables: vec![t], ..Default::default() };
        let (out, _) = r.render(Format::Csv, "x", Value::Null);
        assert_eq!(out, "a,b\n1.0000000000000000e0,2\n");
    }

    #[test]
    fn json_envelope_fields() {
        let mut t = Table::new("rows", &["a"]);
        t.push(vec![Cell::Num(f64::NAN)]);
        let r = Report {
            tables: vec![t],
            warnings: vec!["w".into()],
            ..Default::default()
        };
        let (out, _) = r.render(Format::Json, "cmd", json!({"k": 1}));
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["command"], "cmd");
        assert_eq!(v["inputs"]["k"], 1);
        assert_eq!(v["results"]["rows"][0]["a"], Value::Null);
        assert_eq!(v["warnings"][0], "w");
    }
}
