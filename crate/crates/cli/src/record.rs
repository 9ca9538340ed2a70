//! Deterministic report records and their text, CSV and JSON renderings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

/// A flat row; insertion order is column order.
pub type Row = Map<String, Value>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub parameters: Map<String, Value>,
    pub rows: Vec<Row>,
    pub summary: Map<String, Value>,
    #[serde(skip)]
    pub columns: Vec<String>,
}

impl OutputRecord {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            parameters: Map::new(),
            rows: Vec::new(),
            summary: Map::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.summary.insert(key.to_string(), value.into());
        self
    }

    /// Appends a row given as `(column, value)` pairs in column order.
    pub fn push(&mut self, cells: Vec<(&str, Value)>) {
        debug_assert_eq!(
            cells.iter().map(|(k, _)| *k).collect::<Vec<_>>(),
            self.columns.iter().map(String::as_str).collect::<Vec<_>>()
        );
        self.rows.push(cells.into_iter().map(|(k, v)| (k.to_string(), v)).collect());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records serialize");
        s.push('\n');
        s
    }

    /// Header line plus one line per row. A record without columns (a
    /// summary-only record) is written as `key,value` pairs instead.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.columns.is_empty() {
            w.write_record(["key", "value"]).expect("in-memory write");
            for (k, v) in &self.summary {
                w.write_record([k.clone(), cell(v)]).expect("in-memory write");
            }
            return String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
        }
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(self.columns.iter().map(|c| cell(row.get(c).unwrap_or(&Value::Null))))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={}", cell(v)))
            .collect::<Vec<_>>()
            .join(" ");
        writeln!(out, "# {} {}", self.command, params).unwrap();
        if !self.columns.is_empty() && !self.rows.is_empty() {
            let table: Vec<Vec<String>> = self
                .rows
                .iter()
                .map(|r| self.columns.iter().map(|c| cell(r.get(c).unwrap_or(&Value::Null))).collect())
                .collect();
            let widths: Vec<usize> = self
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| table.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(&self.columns)).unwrap();
            for r in &table {
                writeln!(out, "{}", line(r)).unwrap();
            }
        }
        for (k, v) in &self.summary {
            writeln!(out, "{k}: {}", cell(v)).unwrap();
        }
        out
    }
}

/// A JSON value as a single CSV or text cell. Strings are emitted bare.
pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> OutputRecord {
        let mut r = OutputRecord::new("table", &["p", "a", "set"]);
        r.param("pmin", 11);
        r.push(vec![("p", json!(11)), ("a", json!(2)), ("set", json!("{1,2}"))]);
        r.push(vec![("p", json!(11)), ("a", Value::Null), ("set", json!("{1,3}"))]);
        r.summarize("rows", 2);
        r
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(sample().to_csv(), "p,a,set\n11,2,\"{1,2}\"\n11,,\"{1,3}\"\n");
    }

    #[test]
    fn empty_csv_keeps_header() {
        let r = OutputRecord::new("table", &["p", "a"]);
        assert_eq!(r.to_csv(), "p,a\n");
    }

    #[test]
    fn summary_only_csv() {
        let mut r = sample();
        r.rows.clear();
        r.columns.clear();
        assert_eq!(r.to_csv(), "key,value\nrows,2\n");
    }

    #[test]
    fn json_shape() {
        let v: Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["rows"][0]["set"], "{1,2}");
        assert_eq!(v["summary"]["rows"], 2);
        assert!(v.get("columns").is_none());
    }

    #[test]
    fn text_layout() {
        let text = sample().to_text();
        assert_eq!(text.lines().next(), Some("# table pmin=11"));
        assert!(text.contains(" p  a    set"));
        assert!(text.ends_with("rows: 2\n"));
    }
}
