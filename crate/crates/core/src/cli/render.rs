use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use crate::exactfield::Quad;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone)]
enum Cell {
    Empty,
    Text(String),
    Exact(Quad),
    Coeffs(Vec<Quad>),
}

/// Decimal rendering of an exact value; complex when the radicand is negative.
pub fn decimal(x: &Quad, digits: usize) -> String {
    let (re, im) = x.to_f64_parts();
    if im == 0.0 {
        format!("{re:.digits$}")
    } else {
        let sign = if im < 0.0 { '-' } else { '+' };
        format!("{re:.digits$}{sign}{:.digits$}i", im.abs())
    }
}

/// Output document: header key/values, then rows. Exact columns gain a
/// `_dec` companion when decimals are requested.
#[derive(Debug, Clone)]
pub struct Doc {
    columns: Vec<String>,
    exact_cols: Vec<bool>,
    header: Vec<(String, String)>,
    rows: Vec<Vec<Cell>>,
    decimals: Option<usize>,
    /// Last line of the table rendering.
    pub summary: Option<String>,
}

impl Doc {
    pub fn new(columns: &[&str], decimals: Option<usize>) -> Self {
        Doc {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            exact_cols: vec![false; columns.len()],
            header: Vec::new(),
            rows: Vec::new(),
            decimals,
            summary: None,
        }
    }

    pub fn header(&mut self, key: &str, value: &str) {
        self.header.push((key.to_string(), value.to_string()));
    }

    pub fn exact_header(&mut self, key: &str, value: &Quad, decimals: Option<usize>) {
        self.header(key, &value.to_string());
        if let Some(d) = decimals {
            self.header(&format!("{key}_dec"), &decimal(value, d));
        }
    }

    fn push(&mut self, cells: Vec<Cell>) {
        for (i, c) in cells.iter().enumerate() {
            if matches!(c, Cell::Exact(_)) {
                self.exact_cols[i] = true;
            }
        }
        self.rows.push(cells);
    }

    fn opt(x: Option<&Quad>) -> Cell {
        x.map_or(Cell::Empty, |x| Cell::Exact(x.clone()))
    }

    /// A label followed by exact values.
    pub fn row(&mut self, label: &str, values: &[Option<&Quad>]) {
        let mut cells = vec![Cell::Text(label.to_string())];
        cells.extend(values.iter().map(|v| Self::opt(*v)));
        self.push(cells);
    }

    /// A label, exact values, a text cell, more exact values.
    pub fn mixed_row(&mut self, label: &str, before: &[Option<&Quad>], text: &str, after: &[Option<&Quad>]) {
        let mut cells = vec![Cell::Text(label.to_string())];
        cells.extend(before.iter().map(|v| Self::opt(*v)));
        cells.push(Cell::Text(text.to_string()));
        cells.extend(after.iter().map(|v| Self::opt(*v)));
        self.push(cells);
    }

    pub fn text_row(&mut self, cells: &[&str]) {
        self.push(cells.iter().map(|c| Cell::Text(c.to_string())).collect());
    }

    pub fn poly_row(&mut self, k: usize, text: &str, coeffs: &[Quad]) {
        self.push(vec![
            Cell::Text(k.to_string()),
            Cell::Text(text.to_string()),
            Cell::Coeffs(coeffs.to_vec()),
        ]);
    }

    fn flat_columns(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, c) in self.columns.iter().enumerate() {
            out.push(c.clone());
            if self.decimals.is_some() && self.exact_cols[i] {
                out.push(format!("{c}_dec"));
            }
        }
        out
    }

    fn flat_row(&self, row: &[Cell]) -> Vec<String> {
        let mut out = Vec::new();
        for (i, cell) in row.iter().enumerate() {
            let (exact, dec) = match cell {
                Cell::Empty => (String::new(), String::new()),
                Cell::Text(s) => (s.clone(), String::new()),
                Cell::Exact(x) => (x.to_string(), self.decimals.map(|d| decimal(x, d)).unwrap_or_default()),
                Cell::Coeffs(cs) => (
                    cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "),
                    String::new(),
                ),
            };
            out.push(exact);
            if self.decimals.is_some() && self.exact_cols[i] {
                out.push(dec);
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Table => Ok(self.render_table()),
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_table(&self) -> String {
        let mut s = String::new();
        if let (true, Some(sum)) = (self.rows.is_empty(), &self.summary) {
            let _ = writeln!(s, "{sum}");
            return s;
        }
        for (k, v) in &self.header {
            let _ = writeln!(s, "{k}: {v}");
        }
        if !self.header.is_empty() && !self.rows.is_empty() {
            s.push('\n');
        }
        if !self.rows.is_empty() {
            let cols = self.flat_columns();
            let rows: Vec<Vec<String>> = self.rows.iter().map(|r| self.flat_row(r)).collect();
            let mut widths: Vec<usize> = cols.iter().map(|c| c.chars().count()).collect();
            for r in &rows {
                for (i, c) in r.iter().enumerate() {
                    widths[i] = widths[i].max(c.chars().count());
                }
            }
            let line = |cells: &[String]| {
                let parts: Vec<String> = cells
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("{c:<w$}", w = widths[i]))
                    .collect();
                parts.join("  ").trim_end().to_string()
            };
            let _ = writeln!(s, "{}", line(&cols));
            for r in &rows {
                let _ = writeln!(s, "{}", line(r));
            }
        }
        if let Some(sum) = &self.summary {
            let _ = writeln!(s, "{sum}");
        }
        s
    }

    fn render_csv(&self) -> Result<String, String> {
        let mut s = String::new();
        for (k, v) in &self.header {
            let _ = writeln!(s, "# {k}={v}");
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.flat_columns()).map_err(|e| e.to_string())?;
        for r in &self.rows {
            w.write_record(self.flat_row(r)).map_err(|e| e.to_string())?;
        }
        let bytes = w.into_inner().map_err(|e| e.to_string())?;
        s.push_str(&String::from_utf8(bytes).map_err(|e| e.to_string())?);
        Ok(s)
    }

    fn render_json(&self) -> Result<String, String> {
        let header: Map<String, Value> = self
            .header
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut obj = Map::new();
                for (i, cell) in r.iter().enumerate() {
                    let name = &self.columns[i];
                    let v = match cell {
                        Cell::Empty => Value::Null,
                        Cell::Text(s) => Value::String(s.clone()),
                        Cell::Exact(x) => {
                            obj.insert(name.clone(), Value::String(x.to_string()));
                            if let Some(d) = self.decimals {
                                obj.insert(format!("{name}_dec"), Value::String(decimal(x, d)));
                            }
                            continue;
                        }
                        Cell::Coeffs(cs) => Value::Array(cs.iter().map(|c| Value::String(c.to_string())).collect()),
                    };
                    obj.insert(name.clone(), v);
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "header": header, "rows": rows });
        serde_json::to_string_pretty(&doc)
            .map(|mut s| {
                s.push('\n');
                s
            })
            .map_err(|e| e.to_string())
    }
}
