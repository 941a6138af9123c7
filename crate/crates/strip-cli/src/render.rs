use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

/// The result of a command, rendered as a table or as JSON.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub passed: bool,
    /// Inputs, shown above the table.
    pub params: Vec<(&'static str, String)>,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Lines printed after the table, such as a reduced combination.
    pub lines: Vec<String>,
    pub data: Value,
}

impl Report {
    pub fn new(command: &'static str, data: Value) -> Self {
        Report { command, passed: true, params: Vec::new(), headers: Vec::new(), rows: Vec::new(), lines: Vec::new(), data }
    }

    pub fn param(mut self, key: &'static str, value: impl ToString) -> Self {
        self.params.push((key, value.to_string()));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Table => self.table(),
        }
    }

    fn json(&self) -> String {
        let params: serde_json::Map<String, Value> = self.params.iter().map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect();
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let doc = json!({
            "schema": SCHEMA,
            "command": self.command,
            "passed": self.passed,
            "params": params,
            "result": self.data,
            "meta": { "generated_at_unix": timestamp },
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
        s.push('\n');
        s
    }

    fn table(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.params {
            out.push_str(&format!("{k}: {v}\n"));
        }
        if !self.headers.is_empty() {
            let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
            for row in &self.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(self.headers.clone()));
            out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
            for row in &self.rows {
                out.push_str(&line(row.iter().map(String::as_str).collect()));
            }
        }
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        if self.command == "verify" {
            out.push_str(if self.passed { "status: pass\n" } else { "status: FAIL\n" });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_layout() {
        let mut r = Report::new("betti", Value::Null).param("n", 3);
        r.headers = vec!["k", "betti"];
        r.rows = vec![vec!["0".into(), "1".into()], vec!["1".into(), "7".into()]];
        assert_eq!(r.render(Format::Table), "n: 3\nk  betti\n-  -----\n0  1\n1  7\n");
    }

    #[test]
    fn json_has_schema_and_isolated_timestamp() {
        let v: Value = serde_json::from_str(&Report::new("betti", json!([1, 7])).render(Format::Json)).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["result"], json!([1, 7]));
        assert!(v["meta"]["generated_at_unix"].is_u64());
    }
}
