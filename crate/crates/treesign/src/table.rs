//! Tabular output as JSON, CSV or aligned text.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Number, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
    /// An exact rational, kept as a string so JSON readers don't round it.
    Exact(String),
}

impl Value {
    fn plain(&self) -> String {
        match self {
            Value::Null => String::new(),
            Value::Bool(b) => b.to_string(),
            Value::Int(i) => i.to_string(),
            Value::Float(x) => float_text(*x),
            Value::Text(s) | Value::Exact(s) => s.clone(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Null => Json::Null,
            Value::Bool(b) => Json::Bool(*b),
            Value::Int(i) => Json::Number((*i).into()),
            Value::Float(x) => Number::from_f64(*x).map_or(Json::Null, Json::Number),
            Value::Text(s) | Value::Exact(s) => Json::String(s.clone()),
        }
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<usize> for Value {
    fn from(i: usize) -> Self {
        Value::Int(i as i64)
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::Int(i)
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    /// A one-row table from `(column, value)` pairs.
    pub fn record(fields: Vec<(&str, Value)>) -> Self {
        let (columns, row): (Vec<String>, Vec<Value>) =
            fields.into_iter().map(|(k, v)| (k.to_string(), v)).unzip();
        Table { columns, rows: vec![row] }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Named tables, rendered in order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Document {
    pub sections: Vec<(String, Table)>,
}

impl Document {
    pub fn single(name: &str, table: Table) -> Self {
        Document { sections: vec![(name.to_string(), table)] }
    }

    pub fn add(&mut self, name: &str, table: Table) {
        self.sections.push((name.to_string(), table));
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.json(),
            OutputFormat::Csv => self.csv(),
            OutputFormat::Text => self.text(),
        }
    }

    fn json(&self) -> String {
        let rows = |t: &Table| {
            Json::Array(
                t.rows
                    .iter()
                    .map(|r| {
                        let obj: Map<String, Json> =
                            t.columns.iter().cloned().zip(r.iter().map(Value::json)).collect();
                        Json::Object(obj)
                    })
                    .collect(),
            )
        };
        let value = match &self.sections[..] {
            [(_, t)] => rows(t),
            many => Json::Object(many.iter().map(|(name, t)| (name.clone(), rows(t))).collect()),
        };
        let mut s = serde_json::to_string_pretty(&value).expect("JSON values always serialize");
        s.push('\n');
        s
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        for (i, (_, t)) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&csv_line(t.columns.iter().cloned()));
            for r in &t.rows {
                out.push_str(&csv_line(r.iter().map(Value::plain)));
            }
        }
        out
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let titled = self.sections.len() > 1;
        for (i, (name, t)) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            if titled {
                let _ = writeln!(out, "[{name}]");
            }
            if t.rows.len() == 1 {
                let width = t.columns.iter().map(String::len).max().unwrap_or(0);
                for (c, v) in t.columns.iter().zip(&t.rows[0]) {
                    let _ = writeln!(out, "{c:<width$}  {}", text_cell(v));
                }
                continue;
            }
            let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(text_cell).collect()).collect();
            let widths: Vec<usize> = t
                .columns
                .iter()
                .enumerate()
                .map(|(j, c)| cells.iter().map(|r| r[j].len()).chain([c.len()]).max().unwrap_or(0))
                .collect();
            let line = |fields: Vec<&str>| {
                let padded: Vec<String> =
                    fields.iter().zip(&widths).map(|(f, w)| format!("{f:>w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(t.columns.iter().map(String::as_str).collect()));
            for r in &cells {
                out.push_str(&line(r.iter().map(String::as_str).collect()));
            }
        }
        out
    }
}

/// Shortest round-trip form, with an exponent outside [1e-4, 1e16).
fn float_text(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !a.is_finite() || (1e-4..1e16).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn text_cell(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        other => other.plain(),
    }
}

fn csv_line(fields: impl Iterator<Item = String>) -> String {
    let quoted: Vec<String> = fields
        .map(|f| {
            if f.contains([',', '"', '\n']) {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f
            }
        })
        .collect();
    quoted.join(",") + "\n"
}
