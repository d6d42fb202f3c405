//! Output documents and their JSON and CSV renderings.
//!
//! Floats are written as the shortest decimal that round-trips, in both
//! formats, so a reader recovers the exact doubles.

use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, RunConfig};

/// One CSV field.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    /// Floating-point value.
    Num(f64),
    /// Integer.
    Int(u64),
    /// Flag.
    Bool(bool),
    /// Free text.
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_float(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// Shortest round-trip decimal; non-finite values are spelled out.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:?}")
    } else {
        x.to_string()
    }
}

/// Tabular view of the results.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    /// Column names.
    pub header: Vec<&'static str>,
    /// Data rows, in input order.
    pub rows: Vec<Vec<Cell>>,
}

/// Everything a run reports.
#[derive(Clone, Debug, Serialize)]
pub struct Document {
    /// Effective configuration.
    pub inputs: RunConfig,
    /// Values, error estimates, method and units.
    pub results: Value,
    /// Caveats and traces.
    pub diagnostics: Value,
    /// Tool version.
    pub version: &'static str,
    /// CSV rendering of `results`.
    #[serde(skip)]
    pub table: Table,
}

impl Document {
    /// Full text of the document in the requested format.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document is always serializable");
        s.push('\n');
        s
    }

    /// Header row then data rows, `\n` terminated.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.table.header).expect("in-memory write");
        for row in &self.table.rows {
            w.write_record(row.iter().map(Cell::render)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }
}
