//! Tabular report model shared by every subcommand.
//!
//! A report is a named table whose first column always carries the name of
//! the operation that produced the row, so every printed number is traceable
//! to its producer. The same rows render as an aligned text table, CSV, or a
//! single JSON object.

use crate::config::OutputFormat;

/// One table cell. Numbers keep their type so JSON output stays numeric.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Num(f64),
    Int(i64),
    Flag(bool),
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    /// Rendering used by the text table and CSV: floats in scientific
    /// notation with nine fractional digits, everything else verbatim.
    fn plain(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(v) => format!("{v:.9e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Flag(v) => v.to_string(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Text(s) => serde_json::Value::String(s.clone()),
            Cell::Num(v) => serde_json::Number::from_f64(*v)
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::Null),
            Cell::Int(v) => serde_json::Value::Number((*v).into()),
            Cell::Flag(v) => serde_json::Value::Bool(*v),
        }
    }
}

/// A named table of typed cells with a fixed column schema.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: impl Into<String>, columns: Vec<&'static str>) -> Report {
        Report { command: command.into(), columns, rows: Vec::new() }
    }

    /// A report with the default (op, key, value) schema.
    pub fn keyed(command: impl Into<String>) -> Report {
        Report::new(command, vec!["op", "key", "value"])
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Append an (op, key, value) row to a keyed report.
    pub fn kv(&mut self, op: &str, key: &str, value: Cell) {
        self.push(vec![Cell::text(op), Cell::text(key), value]);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::TextTable => self.render_table(),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_table(&self) -> String {
        let header: Vec<String> = self.columns.iter().map(|c| c.to_string()).collect();
        let mut widths: Vec<usize> = header.iter().map(String::len).collect();
        let rows: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(Cell::plain).collect()).collect();
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let mut write_line = |cells: &[String]| {
            let last = cells.len() - 1;
            for (i, cell) in cells.iter().enumerate() {
                if i < last {
                    out.push_str(&format!("{cell:<width$}  ", width = widths[i]));
                } else {
                    out.push_str(cell); // last column unpadded: no trailing spaces
                }
            }
            out.push('\n');
        };
        write_line(&header);
        for row in &rows {
            write_line(row);
        }
        out
    }

    fn render_csv(&self) -> String {
        fn escape(field: &str) -> String {
            if field.contains([',', '"', '\n', '\r']) {
                format!("\"{}\"", field.replace('"', "\"\""))
            } else {
                field.to_string()
            }
        }
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|c| escape(&c.plain())).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| serde_json::Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let obj = serde_json::json!({
            "command": self.command,
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&obj).expect("report JSON is always serializable");
        s.push('\n');
        s
    }
}
