//! Rectangular result tables and their CSV form.
//!
//! Every output is a header row, a units row, and data rows, joined with LF
//! and encoded as UTF-8. Floats print in Rust's shortest round-trip form, so
//! equal values give equal bytes and the files diff cleanly across runs.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

/// One CSV cell. Text is the only variant that can need quoting.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(value: f64) -> Self {
        Cell::Float(value)
    }
}

impl From<i64> for Cell {
    fn from(value: i64) -> Self {
        Cell::Int(value)
    }
}

impl From<usize> for Cell {
    fn from(value: usize) -> Self {
        Cell::Int(value as i64)
    }
}

impl From<bool> for Cell {
    fn from(value: bool) -> Self {
        Cell::Bool(value)
    }
}

impl From<&str> for Cell {
    fn from(value: &str) -> Self {
        Cell::Text(value.to_string())
    }
}

fn push_escaped(out: &mut String, text: &str) {
    if text.contains([',', '"', '\n', '\r']) {
        out.push('"');
        for c in text.chars() {
            if c == '"' {
                out.push('"');
            }
            out.push(c);
        }
        out.push('"');
    } else {
        out.push_str(text);
    }
}

/// A named table with a fixed column set and units row.
#[derive(Debug, Clone)]
pub struct ResultTable {
    /// Output file name, including the `.csv` extension.
    pub name: &'static str,
    columns: Vec<&'static str>,
    units: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl ResultTable {
    /// Columns and units must pair up one to one.
    pub fn new(name: &'static str, columns: &[(&'static str, &'static str)]) -> Self {
        Self {
            name,
            columns: columns.iter().map(|(c, _)| *c).collect(),
            units: columns.iter().map(|(_, u)| *u).collect(),
            rows: Vec::new(),
        }
    }

    /// Rows must match the column count; anything else is a bug.
    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "table {} expects {} columns",
            self.name,
            self.columns.len()
        );
        self.rows.push(row);
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        out.push_str(&self.units.join(","));
        out.push('\n');
        for row in &self.rows {
            for (index, cell) in row.iter().enumerate() {
                if index > 0 {
                    out.push(',');
                }
                match cell {
                    Cell::Float(v) => write!(out, "{v}").unwrap(),
                    Cell::Int(v) => write!(out, "{v}").unwrap(),
                    Cell::Bool(v) => write!(out, "{v}").unwrap(),
                    Cell::Text(v) => push_escaped(&mut out, v),
                }
            }
            out.push('\n');
        }
        out
    }

    /// Write `<dir>/<name>` and return the path.
    pub fn write(&self, dir: &Path) -> io::Result<PathBuf> {
        let path = dir.join(self.name);
        fs::write(&path, self.to_csv())?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_header_units_and_lf_endings() {
        let mut table = ResultTable::new("t.csv", &[("a", "m"), ("b", "-")]);
        table.push_row(vec![Cell::Float(0.5), Cell::Bool(true)]);
        table.push_row(vec![Cell::Float(1.0), Cell::Bool(false)]);
        assert_eq!(table.to_csv(), "a,b\nm,-\n0.5,true\n1,false\n");
    }

    #[test]
    fn floats_round_trip_through_their_text_form() {
        let mut table = ResultTable::new("t.csv", &[("x", "-")]);
        let value = 0.1 + 0.2;
        table.push_row(vec![Cell::Float(value)]);
        let csv = table.to_csv();
        let text = csv.lines().nth(2).unwrap();
        assert_eq!(text.parse::<f64>().unwrap(), value);
    }

    #[test]
    fn text_cells_with_commas_are_quoted() {
        let mut table = ResultTable::new("t.csv", &[("name", "-")]);
        table.push_row(vec![Cell::Text("a,b\"c".to_string())]);
        assert_eq!(table.to_csv().lines().nth(2).unwrap(), "\"a,b\"\"c\"");
    }

    #[test]
    #[should_panic(expected = "expects 2 columns")]
    fn ragged_rows_are_rejected() {
        let mut table = ResultTable::new("t.csv", &[("a", "m"), ("b", "-")]);
        table.push_row(vec![Cell::Float(1.0)]);
    }
}
