//! Presets, layouts and reference checks for the seven published tables.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::experiment::{default_error_grid, ExperimentConfig};
use crate::inference::{DefaultRule, NeutralBand, Procedure};
use crate::metrics::{BinRatio, ATOM_LABELS, BIN_LABELS};
use crate::model::{ClampBounds, ErrorRange};
use crate::reference;
use crate::report::{CellKey, CellView, ResultSet, TextTable};

/// Below this many runs per cell the reference tolerances are not expected
/// to hold.
pub const MIN_RUNS_FOR_TOLERANCE: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
}

impl TableId {
    pub const ALL: [TableId; 7] = [
        TableId::T1,
        TableId::T2,
        TableId::T3,
        TableId::T4,
        TableId::T5,
        TableId::T6,
        TableId::T7,
    ];

    /// The cells this table needs.
    pub fn config(self, master_seed: u64, runs_per_cell: usize) -> ExperimentConfig {
        let table_errors = || errors(&reference::TABLE_ERRORS);
        let (procedures, evidence_counts, error_ranges, clamp) = match self {
            TableId::T1 => (
                vec![Procedure::ProperBayes],
                vec![4, 7],
                table_errors(),
                None,
            ),
            TableId::T2 => {
                let (lo, hi) = reference::CLAMP_BOUNDS;
                let clamp = ClampBounds::new(lo, hi).expect("reference bounds are valid");
                (
                    vec![Procedure::ProperBayes],
                    vec![4],
                    table_errors(),
                    Some(clamp),
                )
            }
            TableId::T3 => (
                vec![
                    Procedure::SimpleNaive,
                    Procedure::StrongNaive(NeutralBand::default()),
                ],
                vec![4, 7],
                table_errors(),
                None,
            ),
            TableId::T4 => (
                vec![Procedure::ComplexLinear],
                vec![4, 7],
                table_errors(),
                None,
            ),
            TableId::T5 => (
                vec![Procedure::SimpleLinear],
                vec![4, 7],
                table_errors(),
                None,
            ),
            TableId::T6 => (
                vec![
                    Procedure::ProperBayes,
                    Procedure::SimpleNaive,
                    Procedure::StrongLinear(NeutralBand::default()),
                ],
                vec![4],
                errors(&reference::BIN_RATIO_ERRORS),
                None,
            ),
            TableId::T7 => (default_rules(), vec![4], default_error_grid(), None),
        };
        ExperimentConfig {
            evidence_counts,
            error_ranges,
            runs_per_cell,
            master_seed,
            procedures,
            clamp,
            ..ExperimentConfig::new(master_seed)
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            TableId::T1 => "Proper Bayes",
            TableId::T2 => "Proper Bayes, beliefs clamped to [.05, .95]",
            TableId::T3 => "Simple Naive Bayes",
            TableId::T4 => "Complex Linear",
            TableId::T5 => "Simple Linear",
            TableId::T6 => "P(bin | H=T) / P(bin | H=F), four evidence items",
            TableId::T7 => "Default rules, four evidence items",
        }
    }

    /// Renders the table from a result set, which may hold extra cells.
    pub fn render(self, results: &ResultSet) -> Result<TextTable> {
        let title = format!("{}: {}", self, self.title());
        match self {
            TableId::T6 => {
                let views = ratio_views(results)?;
                let rows = BIN_LABELS
                    .iter()
                    .map(|&label| {
                        let values = views
                            .iter()
                            .map(|v| bin(v, label).map(|r| r.lr.value()))
                            .collect::<Result<_>>()?;
                        Ok((label.to_owned(), values))
                    })
                    .collect::<Result<_>>()?;
                Ok(TextTable {
                    title,
                    corner: "Posterior Belief".into(),
                    groups: BIN_RATIO_GROUPS
                        .iter()
                        .map(|g| (g.to_string(), 3))
                        .collect(),
                    columns: RATIO_COLUMNS
                        .repeat(2)
                        .iter()
                        .map(|c| c.to_string())
                        .collect(),
                    rows,
                })
            }
            TableId::T7 => {
                let views = self.views(results)?;
                let rows = ATOM_LABELS
                    .iter()
                    .map(|&label| {
                        let values = views
                            .iter()
                            .map(|v| bin(v, label).map(|r| Some(r.mass_given_t)))
                            .collect::<Result<_>>()?;
                        Ok((label.to_owned(), values))
                    })
                    .collect::<Result<_>>()?;
                Ok(TextTable {
                    title,
                    corner: "Posterior Belief".into(),
                    groups: vec![("Threshold = 3/2".into(), 3), ("Threshold = 5/2".into(), 3)],
                    columns: error_columns(2),
                    rows,
                })
            }
            _ => {
                let views = self.views(results)?;
                let mut rows: Vec<(String, Vec<Option<f64>>)> = BIN_LABELS
                    .iter()
                    .map(|&label| {
                        let values = views
                            .iter()
                            .map(|v| bin(v, label).map(|r| Some(r.mass_given_t)))
                            .collect::<Result<_>>()?;
                        Ok((label.to_owned(), values))
                    })
                    .collect::<Result<_>>()?;
                rows.push((
                    "d'".into(),
                    views.iter().map(|v| Some(v.summary.dprime)).collect(),
                ));
                if self == TableId::T3 {
                    let strong = self.keys_for(STRONG_NAIVE);
                    let values = strong
                        .iter()
                        .map(|k| results.cell(k).map(|v| Some(v.summary.dprime)))
                        .collect::<Result<_>>()?;
                    rows.push(("d'(strong)".into(), values));
                }
                let groups = if self == TableId::T2 {
                    vec![("Four Evidence Items".into(), 3)]
                } else {
                    vec![
                        ("Four Evidence Items".into(), 3),
                        ("Seven Evidence Items".into(), 3),
                    ]
                };
                let columns = error_columns(groups.len());
                Ok(TextTable {
                    title,
                    corner: "Posterior Belief".into(),
                    groups,
                    columns,
                    rows,
                })
            }
        }
    }

    /// Compares a result set against the published values.
    pub fn checks(self, results: &ResultSet) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        match self {
            TableId::T1 => {
                mass_checks(
                    &mut out,
                    &self.views(results)?,
                    &reference::PROPER_BAYES,
                    self,
                );
                dprime_checks(
                    &mut out,
                    &self.views(results)?,
                    &reference::PROPER_BAYES_DPRIME,
                    self,
                );
            }
            TableId::T2 => {
                let views = self.views(results)?;
                mass_checks(&mut out, &views, &reference::CLAMPED_PROPER_BAYES, self);
                dprime_checks(
                    &mut out,
                    &views,
                    &reference::CLAMPED_PROPER_BAYES_DPRIME,
                    self,
                );
                let last = views.last().expect("three columns");
                let (b0, b1) = (
                    bin(last, BIN_LABELS[0])?.mass_given_t,
                    bin(last, BIN_LABELS[1])?.mass_given_t,
                );
                out.push(Check::holds(
                    "t2 U-shape at error 1.2: mass(.00-.11) > mass(.11-.22)",
                    b0 > b1,
                    format!("{b0:.4} vs {b1:.4}"),
                ));
            }
            TableId::T3 => {
                let views = self.views(results)?;
                mass_checks(&mut out, &views, &reference::SIMPLE_NAIVE, self);
                dprime_checks(&mut out, &views, &reference::SIMPLE_NAIVE_DPRIME, self);
                for (key, simple) in self.keys_for(STRONG_NAIVE).iter().zip(&views) {
                    let strong = results.cell(key)?.summary.dprime;
                    out.push(Check::within(
                        format!(
                            "t3 strong vs simple naive d' n={} err {}",
                            key.n, key.error_range
                        ),
                        strong,
                        simple.summary.dprime,
                        reference::NAIVE_VARIANT_DPRIME_GAP,
                    ));
                }
            }
            TableId::T4 | TableId::T5 => {
                let (masses, dprimes) = if self == TableId::T4 {
                    (
                        &reference::COMPLEX_LINEAR,
                        &reference::COMPLEX_LINEAR_DPRIME,
                    )
                } else {
                    (&reference::SIMPLE_LINEAR, &reference::SIMPLE_LINEAR_DPRIME)
                };
                let views = self.views(results)?;
                mass_checks(&mut out, &views, masses, self);
                dprime_checks(&mut out, &views, dprimes, self);
                for (col, view) in views.iter().take(3).enumerate() {
                    for &b in &reference::FOUR_ITEM_LINEAR_ZERO_BINS {
                        let row = bin(view, BIN_LABELS[b])?;
                        out.push(Check::holds(
                            format!(
                                "{self} structural zero n=4 err {} bin {}",
                                reference::TABLE_ERRORS[col],
                                BIN_LABELS[b]
                            ),
                            row.mass_given_t == 0.0 && row.mass_given_f == 0.0,
                            format!("T {} F {}", row.mass_given_t, row.mass_given_f),
                        ));
                    }
                }
            }
            TableId::T6 => {
                let views = ratio_views(results)?;
                for (col, view) in views.iter().enumerate() {
                    for (b, &label) in BIN_LABELS.iter().enumerate() {
                        let expected = reference::BIN_RATIOS[b][col];
                        let name = format!(
                            "t6 {} err {} bin {label}",
                            RATIO_COLUMNS[col % 3],
                            reference::BIN_RATIO_ERRORS[col / 3]
                        );
                        out.push(match bin(view, label)?.lr {
                            BinRatio::Finite(x) => Check::relative(
                                name,
                                x,
                                expected,
                                reference::RATIO_RELATIVE_TOLERANCE,
                            ),
                            other => Check::holds(
                                name,
                                false,
                                format!("observed {other}, expected {expected:.3}"),
                            ),
                        });
                    }
                }
                let top = bin(&views[0], BIN_LABELS[8])?.lr;
                out.push(Check::holds(
                    "t6 proper Bayes top-bin ratio at err 0 below .89/.11",
                    matches!(top, BinRatio::Finite(x) if x < reference::NAIVE_CALIBRATION_RATIO),
                    format!("{top} vs {:.3}", reference::NAIVE_CALIBRATION_RATIO),
                ));
            }
            TableId::T7 => {
                let views = self.views(results)?;
                for (col, view) in views.iter().enumerate() {
                    for (a, &label) in ATOM_LABELS.iter().enumerate() {
                        out.push(Check::within(
                            format!(
                                "t7 T={} err {} atom {label}",
                                reference::DEFAULT_THRESHOLDS[col / 3],
                                reference::TABLE_ERRORS[col % 3]
                            ),
                            bin(view, label)?.mass_given_t,
                            reference::DEFAULT_RULE[a][col],
                            reference::MASS_TOLERANCE,
                        ));
                    }
                }
                let [low, high] = default_rules()[..] else {
                    unreachable!()
                };
                for err in default_error_grid() {
                    let wrong = |p: Procedure| -> Result<f64> {
                        let label = p.label();
                        let key = key(&label, 4, err.value(), false);
                        Ok(bin(&results.cell(&key)?, ATOM_LABELS[0])?.mass_given_t)
                    };
                    let (l, h) = (wrong(low)?, wrong(high)?);
                    out.push(Check::holds(
                        format!("t7 ordering err {err}: P(0.0 | T) at 5/2 > at 3/2"),
                        h > l,
                        format!("{h:.4} vs {l:.4}"),
                    ));
                }
            }
        }
        Ok(out)
    }

    /// Keys for the table's main procedure, in column order.
    fn keys(self) -> Vec<CellKey<'static>> {
        let procedure = match self {
            TableId::T1 | TableId::T2 => "proper_bayes",
            TableId::T3 => "simple_naive",
            TableId::T4 => "complex_linear",
            TableId::T5 => "simple_linear",
            TableId::T6 => unreachable!("ratio table has its own columns"),
            TableId::T7 => {
                return DEFAULT_LABELS
                    .iter()
                    .flat_map(|p| reference::TABLE_ERRORS.map(|e| key(p, 4, e, false)))
                    .collect()
            }
        };
        self.keys_for(procedure)
    }

    fn keys_for(self, procedure: &'static str) -> Vec<CellKey<'static>> {
        let (ns, clamp): (&[usize], bool) = match self {
            TableId::T2 => (&[4], true),
            _ => (&[4, 7], false),
        };
        ns.iter()
            .flat_map(|&n| reference::TABLE_ERRORS.map(|e| key(procedure, n, e, clamp)))
            .collect()
    }

    fn views(self, results: &ResultSet) -> Result<Vec<CellView<'_>>> {
        self.keys().iter().map(|k| results.cell(k)).collect()
    }
}

const STRONG_NAIVE: &str = "strong_naive";
const DEFAULT_LABELS: [&str; 2] = ["default_t1.5", "default_t2.5"];
const RATIO_COLUMNS: [&str; 3] = ["PB", "NB", "SL"];
const RATIO_PROCEDURES: [&str; 3] = ["proper_bayes", "simple_naive", "strong_linear"];
const BIN_RATIO_GROUPS: [&str; 2] = ["Error 0.00", "Error 1.20"];

fn default_rules() -> Vec<Procedure> {
    reference::DEFAULT_THRESHOLDS
        .iter()
        .map(|&t| Procedure::Default(DefaultRule::new(t, true).expect("threshold > 1")))
        .collect()
}

fn errors(values: &[f64]) -> Vec<ErrorRange> {
    values
        .iter()
        .map(|&e| ErrorRange::new(e).expect("reference error ranges lie in [0, 2]"))
        .collect()
}

fn error_columns(groups: usize) -> Vec<String> {
    let one = reference::TABLE_ERRORS.iter().map(|e| format!("{e:.2}"));
    one.cycle()
        .take(groups * reference::TABLE_ERRORS.len())
        .collect()
}

fn key(procedure: &str, n: usize, error_range: f64, clamp: bool) -> CellKey<'_> {
    CellKey {
        procedure,
        n,
        error_range,
        clamp,
    }
}

fn ratio_views(results: &ResultSet) -> Result<Vec<CellView<'_>>> {
    reference::BIN_RATIO_ERRORS
        .iter()
        .flat_map(|&e| RATIO_PROCEDURES.map(|p| key(p, 4, e, false)))
        .map(|k| results.cell(&k))
        .collect()
}

fn bin<'a>(view: &CellView<'a>, label: &str) -> Result<&'a crate::report::ReportRow> {
    view.bins
        .iter()
        .copied()
        .find(|r| r.bin == label)
        .ok_or_else(|| Error::MissingCell(format!("{} bin {label}", view.summary.procedure)))
}

fn column_name(table: TableId, col: usize) -> String {
    let n = if col < 3 { 4 } else { 7 };
    format!("{table} n={n} err {}", reference::TABLE_ERRORS[col % 3])
}

fn mass_checks<const C: usize>(
    out: &mut Vec<Check>,
    views: &[CellView<'_>],
    expected: &[[f64; C]; 9],
    table: TableId,
) {
    for (col, view) in views.iter().enumerate() {
        for (b, &label) in BIN_LABELS.iter().enumerate() {
            let observed = view
                .bins
                .iter()
                .find(|r| r.bin == label)
                .map_or(f64::NAN, |r| r.mass_given_t);
            out.push(Check::within(
                format!("{} bin {label}", column_name(table, col)),
                observed,
                expected[b][col],
                reference::MASS_TOLERANCE,
            ));
        }
    }
}

fn dprime_checks(out: &mut Vec<Check>, views: &[CellView<'_>], expected: &[f64], table: TableId) {
    for (col, view) in views.iter().enumerate() {
        out.push(Check::within(
            format!("{} d'", column_name(table, col)),
            view.summary.dprime,
            expected[col],
            reference::DPRIME_TOLERANCE,
        ));
    }
}

/// One comparison against a published value or property.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn holds(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    pub fn within(name: impl Into<String>, observed: f64, expected: f64, tolerance: f64) -> Self {
        let delta = (observed - expected).abs();
        Check::holds(
            name,
            delta <= tolerance,
            format!("observed {observed:.4} expected {expected:.3} |d| {delta:.4} tol {tolerance}"),
        )
    }

    pub fn relative(name: impl Into<String>, observed: f64, expected: f64, tolerance: f64) -> Self {
        let rel = (observed - expected).abs() / expected.abs();
        Check::holds(
            name,
            rel <= tolerance,
            format!("observed {observed:.4} expected {expected:.3} rel {rel:.3} tol {tolerance}"),
        )
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.name, self.detail)
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = *self as usize + 1;
        write!(f, "t{k}")
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::config("table", format!("unknown table {s:?}; expected t1..t7")))
    }
}
