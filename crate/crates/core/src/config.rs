//! Flat `key = value` experiment configuration.
//!
//! ```text
//! # comments start with '#'
//! master_seed = 42
//! evidence_counts = 4, 7
//! error_ranges = 0.0, 0.4, 1.2
//! procedures = proper_bayes, simple_linear, default
//! default_threshold = 3/2, 5/2
//! ```
//!
//! Lists are comma separated and may be wrapped in brackets. Numbers accept a
//! `a/b` fraction form. Only `master_seed` is required.
//!
//! Procedure names: `proper_bayes`, `simple_naive`, `strong_naive`,
//! `complex_linear`, `simple_linear`, `strong_linear`, `weighted_linear`,
//! `default` (one procedure per `default_threshold`, prior odds counted as a
//! ratio), `default_evidence_only` (same, evidence ratios only), and `all`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::experiment::{default_error_grid, ExperimentConfig, DEFAULT_RUNS};
use crate::inference::{DefaultRule, NeutralBand, Procedure, DEFAULT_WEIGHT_CAP};
use crate::model::{ClampBounds, ErrorRange};

pub const KEYS: [&str; 12] = [
    "evidence_counts",
    "error_ranges",
    "runs_per_cell",
    "master_seed",
    "procedures",
    "strong_band_lo",
    "strong_band_hi",
    "default_threshold",
    "weighted_cap",
    "clamp_lo",
    "clamp_hi",
    "output_dir",
];

const ALL_PROCEDURES: &str =
    "proper_bayes, simple_naive, strong_naive, complex_linear, simple_linear, \
                              strong_linear, weighted_linear, default";

/// Unvalidated key/value pairs; later assignments replace earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    entries: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut raw = RawConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            raw.set_assignment(line).map_err(|e| match e {
                Error::Config { key, message } => Error::Config {
                    key,
                    message: format!("line {}: {message}", lineno + 1),
                },
                other => other,
            })?;
        }
        Ok(raw)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        RawConfig::parse(&text)
    }

    /// Applies one `key=value` assignment.
    pub fn set_assignment(&mut self, assignment: &str) -> Result<()> {
        let Some((key, value)) = assignment.split_once('=') else {
            return Err(Error::config(assignment.trim(), "expected key = value"));
        };
        self.set(key.trim(), value.trim())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if !KEYS.contains(&key) {
            return Err(Error::config(key, "unknown key"));
        }
        self.entries.insert(key.to_owned(), value.to_owned());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn build(&self) -> Result<ExperimentConfig> {
        let master_seed = match self.get("master_seed") {
            Some(v) => v.parse::<u64>().map_err(|_| {
                Error::config("master_seed", format!("not an unsigned integer: {v:?}"))
            })?,
            None => return Err(Error::config("master_seed", "required key is missing")),
        };
        let evidence_counts = match self.get("evidence_counts") {
            Some(v) => list(v)
                .map(|s| {
                    s.parse::<usize>().map_err(|_| {
                        Error::config("evidence_counts", format!("not an integer: {s:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?,
            None => vec![4, 7],
        };
        let error_ranges = match self.get("error_ranges") {
            Some(v) => list(v)
                .map(|s| {
                    number("error_ranges", s).and_then(|x| {
                        ErrorRange::new(x).map_err(|e| Error::config("error_ranges", e.to_string()))
                    })
                })
                .collect::<Result<Vec<_>>>()?,
            None => default_error_grid(),
        };
        let runs_per_cell = match self.get("runs_per_cell") {
            Some(v) => v.parse::<usize>().map_err(|_| {
                Error::config("runs_per_cell", format!("not a positive integer: {v:?}"))
            })?,
            None => DEFAULT_RUNS,
        };
        let band = NeutralBand::new(
            self.number_or("strong_band_lo", 2.0 / 3.0)?,
            self.number_or("strong_band_hi", 1.5)?,
        )
        .map_err(|e| Error::config("strong_band_lo", e.to_string()))?;
        let thresholds = match self.get("default_threshold") {
            Some(v) => list(v)
                .map(|s| number("default_threshold", s))
                .collect::<Result<Vec<_>>>()?,
            None => vec![1.5, 2.5],
        };
        let cap = self.number_or("weighted_cap", DEFAULT_WEIGHT_CAP)?;
        let procedures = parse_procedures(
            self.get("procedures").unwrap_or(ALL_PROCEDURES),
            band,
            &thresholds,
            cap,
        )?;
        let clamp = match (self.get("clamp_lo"), self.get("clamp_hi")) {
            (None, None) => None,
            (Some(_), None) => {
                return Err(Error::config("clamp_hi", "required when clamp_lo is set"))
            }
            (None, Some(_)) => {
                return Err(Error::config("clamp_lo", "required when clamp_hi is set"))
            }
            (Some(lo), Some(hi)) => {
                let lo = number("clamp_lo", lo)?;
                let hi = number("clamp_hi", hi)?;
                Some(
                    ClampBounds::new(lo, hi)
                        .map_err(|e| Error::config("clamp_lo", e.to_string()))?,
                )
            }
        };
        let output_dir = PathBuf::from(self.get("output_dir").unwrap_or("results"));
        let config = ExperimentConfig {
            evidence_counts,
            error_ranges,
            runs_per_cell,
            master_seed,
            procedures,
            clamp,
            output_dir,
        };
        config.validate()?;
        Ok(config)
    }

    fn number_or(&self, key: &str, default: f64) -> Result<f64> {
        self.get(key).map_or(Ok(default), |v| number(key, v))
    }
}

fn list(v: &str) -> impl Iterator<Item = &str> {
    v.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
}

fn number(key: &str, s: &str) -> Result<f64> {
    let bad = || Error::config(key, format!("not a number: {s:?}"));
    let x = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| bad())?;
            let b: f64 = b.trim().parse().map_err(|_| bad())?;
            a / b
        }
        None => s.parse().map_err(|_| bad())?,
    };
    if !x.is_finite() {
        return Err(bad());
    }
    Ok(x)
}

fn parse_procedures(
    v: &str,
    band: NeutralBand,
    thresholds: &[f64],
    cap: f64,
) -> Result<Vec<Procedure>> {
    let bad = |msg: String| Error::config("procedures", msg);
    let mut out = Vec::new();
    for name in list(v) {
        match name {
            "all" => out.extend(parse_procedures(ALL_PROCEDURES, band, thresholds, cap)?),
            "proper_bayes" => out.push(Procedure::ProperBayes),
            "simple_naive" => out.push(Procedure::SimpleNaive),
            "strong_naive" => out.push(Procedure::StrongNaive(band)),
            "complex_linear" => out.push(Procedure::ComplexLinear),
            "simple_linear" => out.push(Procedure::SimpleLinear),
            "strong_linear" => out.push(Procedure::StrongLinear(band)),
            "weighted_linear" => out.push(
                Procedure::weighted_linear(cap)
                    .map_err(|e| Error::config("weighted_cap", e.to_string()))?,
            ),
            "default" | "default_evidence_only" => {
                for &t in thresholds {
                    let rule = DefaultRule::new(t, name == "default")
                        .map_err(|e| Error::config("default_threshold", e.to_string()))?;
                    out.push(Procedure::Default(rule));
                }
            }
            other => return Err(bad(format!("unknown procedure {other:?}"))),
        }
    }
    let mut labels: Vec<String> = out.iter().map(Procedure::label).collect();
    labels.sort();
    if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
        return Err(bad(format!("procedure {} listed twice", w[0])));
    }
    Ok(out)
}

pub fn load_config(path: &Path, overrides: &[String]) -> Result<ExperimentConfig> {
    let mut raw = RawConfig::load(path)?;
    for o in overrides {
        raw.set_assignment(o)?;
    }
    raw.build()
}
