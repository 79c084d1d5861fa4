//! Tabular output in csv, json and markdown.

use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

/// One table cell: display text plus, for numbers, the raw value that json
/// carries at full precision.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Real { value: f64, text: String },
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn real(value: f64, text: String) -> Self {
        Cell::Real { value, text }
    }

    fn display(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Real { text, .. } => text.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(v) => json!(v),
            Cell::Real { value, .. } => serde_json::Number::from_f64(*value).map_or(Value::Null, Value::Number),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub title: Option<String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Per-row footnote; markdown shows a marker, csv/json a `note` column.
    pub row_notes: Vec<Option<String>>,
    /// Free-text lines after a markdown table; a `notes` array in json.
    pub notes: Vec<String>,
    /// Extra top-level json fields; markdown prints them as `key: value`.
    pub meta: Vec<(&'static str, Value)>,
}

impl Report {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Report { columns, ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>, note: Option<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
        self.row_notes.push(note);
    }

    fn has_notes(&self) -> bool {
        self.row_notes.iter().any(Option::is_some)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
            Format::Markdown => self.markdown(),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<&str> = self.columns.clone();
        if self.has_notes() {
            header.push("note");
        }
        w.write_record(&header).expect("in-memory csv");
        for (row, note) in self.rows.iter().zip(&self.row_notes) {
            let mut rec: Vec<String> = row.iter().map(Cell::display).collect();
            if self.has_notes() {
                rec.push(note.clone().unwrap_or_default());
            }
            w.write_record(&rec).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
    }

    fn json(&self) -> String {
        let mut top = Map::new();
        for (k, v) in &self.meta {
            top.insert((*k).to_string(), v.clone());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .zip(&self.row_notes)
            .map(|(row, note)| {
                let mut obj = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    obj.insert((*col).to_string(), cell.json());
                }
                if self.has_notes() {
                    obj.insert("note".into(), note.clone().map_or(Value::Null, Value::String));
                }
                Value::Object(obj)
            })
            .collect();
        top.insert("rows".into(), Value::Array(rows));
        if !self.notes.is_empty() {
            top.insert("notes".into(), json!(self.notes));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("json");
        s.push('\n');
        s
    }

    fn markdown(&self) -> String {
        let mut out = String::new();
        if let Some(t) = &self.title {
            out.push_str(&format!("## {t}\n\n"));
        }
        for (k, v) in &self.meta {
            let text = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {text}\n"));
        }
        if !self.meta.is_empty() {
            out.push('\n');
        }
        let mut footnotes = Vec::new();
        let body: Vec<Vec<String>> = self
            .rows
            .iter()
            .zip(&self.row_notes)
            .map(|(row, note)| {
                let mut cells: Vec<String> = row.iter().map(Cell::display).collect();
                if let Some(n) = note {
                    footnotes.push(n.clone());
                    cells[0] = format!("{} [{}]", cells[0], footnotes.len());
                }
                cells
            })
            .collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| body.iter().map(|r| r[i].len()).chain([self.columns[i].len(), 3]).max().unwrap_or(3))
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            format!("| {} |\n", padded.join(" | "))
        };
        let header: Vec<String> = self.columns.iter().map(|c| c.to_string()).collect();
        out.push_str(&line(&header));
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&format!("|-{}-|\n", rule.join("-|-")));
        for r in &body {
            out.push_str(&line(r));
        }
        if !footnotes.is_empty() {
            out.push('\n');
            for (i, n) in footnotes.iter().enumerate() {
                out.push_str(&format!("[{}] {n}\n", i + 1));
            }
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for n in &self.notes {
                out.push_str(&format!("- {n}\n"));
            }
        }
        out
    }
}
