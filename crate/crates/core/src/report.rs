//! Result files and plain-text tables.
//!
//! `histograms.csv` has one row per bin per cell:
//!
//! ```text
//! procedure,n,error_range,clamp,bin,mass_given_T,mass_given_F,lr
//! ```
//!
//! Default-rule cells carry three rows labelled `0.0`, `0.5`, `1.0`; all
//! other cells carry the nine bin rows `.00-.11` ... `.89-1.0`. `lr` is a
//! number, `inf`, or `undefined`.
//!
//! `summary.csv` has one row per cell:
//!
//! ```text
//! procedure,n,error_range,clamp,dprime,brier,degenerate_count
//! ```
//!
//! Floats are written in shortest round-trip form, so reading a file back
//! reproduces the in-memory values exactly.

use std::fmt;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiment::CellResult;
use crate::metrics::{BinRatio, ATOM_BINS, ATOM_LABELS, BIN_COUNT, BIN_LABELS};

pub const HISTOGRAMS_FILE: &str = "histograms.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const HISTOGRAM_HEADER: [&str; 8] = [
    "procedure",
    "n",
    "error_range",
    "clamp",
    "bin",
    "mass_given_T",
    "mass_given_F",
    "lr",
];
pub const SUMMARY_HEADER: [&str; 7] = [
    "procedure",
    "n",
    "error_range",
    "clamp",
    "dprime",
    "brier",
    "degenerate_count",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub procedure: String,
    pub n: usize,
    pub error_range: f64,
    pub clamp: bool,
    pub bin: String,
    pub mass_given_t: f64,
    pub mass_given_f: f64,
    pub lr: BinRatio,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub procedure: String,
    pub n: usize,
    pub error_range: f64,
    pub clamp: bool,
    pub dprime: f64,
    pub brier: f64,
    pub degenerate_count: u64,
}

/// Key identifying one cell in a result set.
#[derive(Debug, Clone, PartialEq)]
pub struct CellKey<'a> {
    pub procedure: &'a str,
    pub n: usize,
    pub error_range: f64,
    pub clamp: bool,
}

impl fmt::Display for CellKey<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} error_range={} clamp={}",
            self.procedure, self.n, self.error_range, self.clamp
        )
    }
}

fn same_range(a: f64, b: f64) -> bool {
    (a - b).abs() < 5e-7
}

/// The rows of `histograms.csv` and `summary.csv`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResultSet {
    pub histograms: Vec<ReportRow>,
    pub summaries: Vec<SummaryRow>,
}

/// One cell's rows.
#[derive(Debug, Clone)]
pub struct CellView<'a> {
    pub bins: Vec<&'a ReportRow>,
    pub summary: &'a SummaryRow,
}

impl CellView<'_> {
    pub fn bin(&self, label: &str) -> Option<&ReportRow> {
        self.bins.iter().copied().find(|r| r.bin == label)
    }
}

impl ResultSet {
    pub fn from_cells(cells: &[CellResult]) -> Self {
        let mut out = ResultSet::default();
        for cell in cells {
            let procedure = cell.id.procedure.label();
            let error_range = cell.id.error_range.micros() as f64 / 1e6;
            let clamp = cell.id.clamp.is_some();
            let bins: Vec<(usize, &str)> = if cell.id.procedure.is_default() {
                ATOM_BINS.iter().copied().zip(ATOM_LABELS).collect()
            } else {
                (0..BIN_COUNT).zip(BIN_LABELS).collect()
            };
            for (b, label) in bins {
                out.histograms.push(ReportRow {
                    procedure: procedure.clone(),
                    n: cell.id.n,
                    error_range,
                    clamp,
                    bin: label.to_owned(),
                    mass_given_t: cell.given_true.mass[b],
                    mass_given_f: cell.given_false.mass[b],
                    lr: cell.lr[b],
                });
            }
            out.summaries.push(SummaryRow {
                procedure,
                n: cell.id.n,
                error_range,
                clamp,
                dprime: cell.dprime,
                brier: cell.brier,
                degenerate_count: cell.degenerate_count,
            });
        }
        out
    }

    pub fn extend(&mut self, other: ResultSet) {
        self.histograms.extend(other.histograms);
        self.summaries.extend(other.summaries);
    }

    pub fn cell(&self, key: &CellKey<'_>) -> Result<CellView<'_>> {
        let matches = |procedure: &str, n: usize, err: f64, clamp: bool| {
            procedure == key.procedure
                && n == key.n
                && same_range(err, key.error_range)
                && clamp == key.clamp
        };
        let summary = self
            .summaries
            .iter()
            .find(|s| matches(&s.procedure, s.n, s.error_range, s.clamp))
            .ok_or_else(|| Error::MissingCell(key.to_string()))?;
        let bins: Vec<&ReportRow> = self
            .histograms
            .iter()
            .filter(|r| matches(&r.procedure, r.n, r.error_range, r.clamp))
            .collect();
        if bins.is_empty() {
            return Err(Error::MissingCell(key.to_string()));
        }
        Ok(CellView { bins, summary })
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join(HISTOGRAMS_FILE);
        let mut w = csv::Writer::from_path(&path).map_err(|e| csv_io(&path, e))?;
        w.write_record(HISTOGRAM_HEADER)?;
        for r in &self.histograms {
            w.write_record([
                r.procedure.clone(),
                r.n.to_string(),
                fmt_f64(r.error_range),
                r.clamp.to_string(),
                r.bin.clone(),
                fmt_f64(r.mass_given_t),
                fmt_f64(r.mass_given_f),
                r.lr.to_string(),
            ])?;
        }
        w.flush().map_err(|e| Error::io(&path, e))?;

        let path = dir.join(SUMMARY_FILE);
        let mut w = csv::Writer::from_path(&path).map_err(|e| csv_io(&path, e))?;
        w.write_record(SUMMARY_HEADER)?;
        for s in &self.summaries {
            w.write_record([
                s.procedure.clone(),
                s.n.to_string(),
                fmt_f64(s.error_range),
                s.clamp.to_string(),
                fmt_f64(s.dprime),
                fmt_f64(s.brier),
                s.degenerate_count.to_string(),
            ])?;
        }
        w.flush().map_err(|e| Error::io(&path, e))?;
        Ok(())
    }

    pub fn read(dir: &Path) -> Result<Self> {
        let mut out = ResultSet::default();
        let path = dir.join(HISTOGRAMS_FILE);
        for record in open(&path, &HISTOGRAM_HEADER)?.records() {
            let rec = record?;
            let f = Fields {
                rec: &rec,
                path: &path,
            };
            out.histograms.push(ReportRow {
                procedure: f.text(0),
                n: f.parse(1)?,
                error_range: f.parse(2)?,
                clamp: f.parse(3)?,
                bin: f.text(4),
                mass_given_t: f.parse(5)?,
                mass_given_f: f.parse(6)?,
                lr: BinRatio::parse(&rec[7]).ok_or_else(|| f.bad(7))?,
            });
        }
        let path = dir.join(SUMMARY_FILE);
        for record in open(&path, &SUMMARY_HEADER)?.records() {
            let rec = record?;
            let f = Fields {
                rec: &rec,
                path: &path,
            };
            out.summaries.push(SummaryRow {
                procedure: f.text(0),
                n: f.parse(1)?,
                error_range: f.parse(2)?,
                clamp: f.parse(3)?,
                dprime: f.parse(4)?,
                brier: f.parse(5)?,
                degenerate_count: f.parse(6)?,
            });
        }
        Ok(out)
    }
}

/// Shortest representation that parses back to the same value.
fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn csv_io(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Malformed {
            path: path.to_owned(),
            message: format!("{other:?}"),
        },
    }
}

fn open(path: &Path, header: &[&str]) -> Result<csv::Reader<fs::File>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_io(path, e))?;
    let found: Vec<&str> = r.headers()?.iter().collect();
    if found != header {
        return Err(Error::Malformed {
            path: path.to_owned(),
            message: format!("header {found:?}, expected {header:?}"),
        });
    }
    Ok(r)
}

struct Fields<'a> {
    rec: &'a csv::StringRecord,
    path: &'a Path,
}

impl Fields<'_> {
    fn text(&self, i: usize) -> String {
        self.rec[i].to_owned()
    }

    fn bad(&self, i: usize) -> Error {
        Error::Malformed {
            path: self.path.to_owned(),
            message: format!(
                "line {}: bad value {:?}",
                self.rec.position().map_or(0, |p| p.line()),
                &self.rec[i]
            ),
        }
    }

    fn parse<T: std::str::FromStr>(&self, i: usize) -> Result<T> {
        self.rec[i].parse().map_err(|_| self.bad(i))
    }
}

/// A rendered results table: a row-label column followed by numeric
/// columns, optionally grouped under spanning headings.
#[derive(Debug, Clone, PartialEq)]
pub struct TextTable {
    pub title: String,
    pub corner: String,
    /// Heading and number of columns it spans.
    pub groups: Vec<(String, usize)>,
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<Option<f64>>)>,
}

const LABEL_WIDTH: usize = 18;
const CELL_WIDTH: usize = 9;

impl TextTable {
    /// Parses the data rows of a rendered table back into labels and values.
    /// Cells rendered as `-` come back as `None`.
    pub fn parse_rows(text: &str) -> Vec<(String, Vec<Option<f64>>)> {
        let mut rows = Vec::new();
        let mut in_body = false;
        for line in text.lines() {
            if !in_body {
                in_body = line.starts_with('-');
                continue;
            }
            let mut tokens = line.split_whitespace();
            let Some(label) = tokens.next() else { continue };
            let values = tokens
                .map(|t| if t == "-" { None } else { t.parse().ok() })
                .collect();
            rows.push((label.to_owned(), values));
        }
        rows
    }
}

impl fmt::Display for TextTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        if !self.groups.is_empty() {
            write!(f, "{:LABEL_WIDTH$}", "")?;
            for (name, span) in &self.groups {
                let w = span * CELL_WIDTH;
                write!(f, "{name:>w$}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{:<LABEL_WIDTH$}", self.corner)?;
        for c in &self.columns {
            write!(f, "{c:>CELL_WIDTH$}")?;
        }
        writeln!(f)?;
        writeln!(
            f,
            "{}",
            "-".repeat(LABEL_WIDTH + CELL_WIDTH * self.columns.len())
        )?;
        for (label, values) in &self.rows {
            write!(f, "{label:<LABEL_WIDTH$}")?;
            for v in values {
                match v {
                    Some(x) if x.is_infinite() => write!(f, "{:>CELL_WIDTH$}", "inf")?,
                    Some(x) => write!(f, "{x:>CELL_WIDTH$.3}")?,
                    None => write!(f, "{:>CELL_WIDTH$}", "-")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
