//! Median tables and their CSV form.
//!
//! ```text
//! function,factor,median,run_1,...,run_k
//! branin,100,3.9788735772973838e-1,...
//! branin,inf,...
//! ```
//!
//! Rows are ordered by function name, then ascending factor with the
//! schedule-off column (`inf`) last. Reals are written with 17 significant
//! digits, so parsing a written table reproduces it exactly.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::benchmarks::FunctionId;
use crate::error::{io_err, PpaError, Result};
use crate::experiment::{CellResult, Factor};

#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub function: FunctionId,
    pub factor: Factor,
    pub median: f64,
    pub finals: Vec<f64>,
}

/// Complete (function x factor) grid of medians in canonical row order.
#[derive(Clone, Debug, PartialEq)]
pub struct HeatmapTable {
    rows: Vec<TableRow>,
}

fn row_order(a: &TableRow, b: &TableRow) -> std::cmp::Ordering {
    a.function
        .name()
        .cmp(b.function.name())
        .then(a.factor.sort_key().total_cmp(&b.factor.sort_key()))
}

impl HeatmapTable {
    /// Sorts `rows` canonically and checks every (function, factor) pair
    /// occurs exactly once.
    pub fn new(mut rows: Vec<TableRow>) -> Result<Self> {
        rows.sort_by(row_order);
        let table = Self { rows };
        table.check_complete()?;
        Ok(table)
    }

    pub fn from_cells(cells: &[CellResult]) -> Result<Self> {
        Self::new(
            cells
                .iter()
                .map(|c| TableRow {
                    function: c.function,
                    factor: c.factor,
                    median: c.median,
                    finals: c.finals.clone(),
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }

    /// Distinct functions in row order.
    pub fn functions(&self) -> Vec<FunctionId> {
        let mut out: Vec<FunctionId> = Vec::new();
        for r in &self.rows {
            if out.last() != Some(&r.function) {
                out.push(r.function);
            }
        }
        out
    }

    /// Distinct factors in column order.
    pub fn factors(&self) -> Vec<Factor> {
        let first = self.rows.first().map(|r| r.function);
        self.rows
            .iter()
            .take_while(|r| Some(r.function) == first)
            .map(|r| r.factor)
            .collect()
    }

    pub fn row(&self, function: FunctionId) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(move |r| r.function == function)
    }

    fn check_complete(&self) -> Result<()> {
        let missing = |msg: String| Err(PpaError::InvalidConfig(format!("incomplete table: {msg}")));
        if self.rows.is_empty() {
            return missing("no rows".into());
        }
        let functions: BTreeSet<&str> = self.rows.iter().map(|r| r.function.name()).collect();
        let factors: Vec<u64> = {
            let mut f: Vec<u64> = self.rows.iter().map(|r| r.factor.sort_key().to_bits()).collect();
            f.sort_unstable();
            f.dedup();
            f
        };
        if self.rows.len() != functions.len() * factors.len() {
            return missing(format!(
                "{} rows for {} functions x {} factors",
                self.rows.len(),
                functions.len(),
                factors.len()
            ));
        }
        for w in self.rows.windows(2) {
            if row_order(&w[0], &w[1]).is_eq() {
                return missing(format!("duplicate cell ({}, {})", w[0].function, w[0].factor));
            }
        }
        let width = self.rows[0].finals.len();
        if let Some(r) = self.rows.iter().find(|r| r.finals.len() != width) {
            return missing(format!(
                "({}, {}) has {} runs, expected {width}",
                r.function,
                r.factor,
                r.finals.len()
            ));
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let width = self.rows[0].finals.len();
        let mut out = String::from("function,factor,median");
        for i in 1..=width {
            let _ = write!(out, ",run_{i}");
        }
        out.push('\n');
        for r in &self.rows {
            let _ = write!(out, "{},{},{}", r.function, csv_factor(r.factor), csv_real(r.median));
            for v in &r.finals {
                let _ = write!(out, ",{}", csv_real(*v));
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(io_err(path))
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        Self::parse_csv(&text, path)
    }

    /// `origin` is only used in diagnostics.
    pub fn parse_csv(text: &str, origin: &Path) -> Result<Self> {
        let err = |line: usize, message: String| PpaError::Parse {
            path: PathBuf::from(origin),
            line,
            message,
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
        let cols: Vec<&str> = header.split(',').collect();
        if cols.len() < 4 || cols[..3] != ["function", "factor", "median"] {
            return Err(err(
                1,
                format!("expected header 'function,factor,median,run_1,...', got '{header}'"),
            ));
        }
        for (i, c) in cols[3..].iter().enumerate() {
            if *c != format!("run_{}", i + 1) {
                return Err(err(1, format!("column {}: expected 'run_{}', got '{c}'", i + 4, i + 1)));
            }
        }
        let mut rows = Vec::new();
        for (line, text) in lines {
            if text.is_empty() {
                continue;
            }
            let fields: Vec<&str> = text.split(',').collect();
            if fields.len() != cols.len() {
                return Err(err(
                    line,
                    format!("expected {} columns, found {}", cols.len(), fields.len()),
                ));
            }
            let function: FunctionId = fields[0]
                .parse()
                .map_err(|e: PpaError| err(line, format!("column 1: {e}")))?;
            let factor: Factor = fields[1]
                .parse()
                .map_err(|e: PpaError| err(line, format!("column 2: {e}")))?;
            let real = |col: usize| -> Result<f64> {
                fields[col]
                    .parse::<f64>()
                    .map_err(|_| err(line, format!("column {}: '{}' is not a number", col + 1, fields[col])))
            };
            let median = real(2)?;
            let finals = (3..fields.len()).map(real).collect::<Result<Vec<_>>>()?;
            rows.push(TableRow {
                function,
                factor,
                median,
                finals,
            });
        }
        Self::new(rows).map_err(|e| err(0, e.to_string()))
    }
}

fn csv_factor(f: Factor) -> String {
    match f {
        Factor::Linear(v) => format!("{v}"),
        Factor::Vanilla => "inf".into(),
    }
}

fn csv_real(v: f64) -> String {
    format!("{v:.16e}")
}
