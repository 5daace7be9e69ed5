//! Plain CSV with one header row and `%.12e` numerics.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Formats like C's `%.12e` (signed, at least two exponent digits).
pub fn fmt_sci(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let s = format!("{v:.12e}");
    let (mant, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mant}e{sign}{:02}", exp.abs())
}

/// In-memory CSV table.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    /// Appends a row of already-formatted cells.
    pub fn push(&mut self, row: Vec<String>) -> Result<()> {
        if row.len() != self.header.len() {
            return Err(Error::Config(format!("csv row has {} cells, header has {}", row.len(), self.header.len())));
        }
        self.rows.push(row);
        Ok(())
    }

    /// Appends a row of numbers.
    pub fn push_nums(&mut self, row: &[f64]) -> Result<()> {
        self.push(row.iter().map(|&v| fmt_sci(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.header.join(","));
        for r in &self.rows {
            let _ = writeln!(out, "{}", r.join(","));
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render()).map_err(|source| Error::File { path: path.display().to_string(), source })
    }

    /// A numeric grid with no header, one row per line.
    pub fn render_grid(grid: &[Vec<f64>]) -> String {
        grid.iter().map(|r| r.iter().map(|&v| fmt_sci(v)).collect::<Vec<_>>().join(",") + "\n").collect()
    }
}
