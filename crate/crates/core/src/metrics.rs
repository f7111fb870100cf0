//! Evaluation quantities: binned conditional histograms of posterior belief,
//! conditional moments and d', per-bin likelihood ratios, and Brier scores.
//!
//! All quantities are exact expectations over the evidential states of one
//! true model, weighted by `P(e | h)` (or `P(h, e)` for Brier).

use std::fmt;
use std::ops::{AddAssign, Index};

use crate::error::{Error, Result};
use crate::model::{Hypothesis, JointTable};

pub const BIN_COUNT: usize = 9;

/// Interior bin boundaries. Bins are left-closed, right-open; the last bin is
/// closed at 1.0.
pub const BIN_EDGES: [f64; BIN_COUNT - 1] = [0.11, 0.22, 0.33, 0.44, 0.56, 0.67, 0.78, 0.89];

pub const BIN_LABELS: [&str; BIN_COUNT] = [
    ".00-.11", ".11-.22", ".22-.33", ".33-.44", ".44-.56", ".56-.67", ".67-.78", ".78-.89",
    ".89-1.0",
];

/// The three outputs of the default rule, with the bin each falls in.
pub const ATOM_LABELS: [&str; 3] = ["0.0", "0.5", "1.0"];
pub const ATOM_BINS: [usize; 3] = [0, 4, 8];

#[inline]
pub fn bin_index(pb: f64) -> usize {
    BIN_EDGES.iter().take_while(|&&edge| edge <= pb).count()
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BinHistogram {
    pub mass: [f64; BIN_COUNT],
}

impl BinHistogram {
    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    pub fn scaled(&self, k: f64) -> BinHistogram {
        BinHistogram {
            mass: self.mass.map(|m| m * k),
        }
    }

    /// Masses at the default rule's atoms 0.0, 0.5, 1.0.
    pub fn atoms(&self) -> DefaultHistogram {
        DefaultHistogram {
            mass: ATOM_BINS.map(|b| self.mass[b]),
        }
    }
}

impl Index<usize> for BinHistogram {
    type Output = f64;

    fn index(&self, bin: usize) -> &f64 {
        &self.mass[bin]
    }
}

impl AddAssign<&BinHistogram> for BinHistogram {
    fn add_assign(&mut self, rhs: &BinHistogram) {
        for (a, b) in self.mass.iter_mut().zip(rhs.mass) {
            *a += b;
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DefaultHistogram {
    pub mass: [f64; 3],
}

/// Mean and variance of posterior belief conditional on one hypothesis value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalSummary {
    pub mean: f64,
    pub variance: f64,
}

/// First and second raw moments; summing these across runs and dividing by
/// the run count gives the moments of the pooled distribution.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    pub m1: f64,
    pub m2: f64,
}

impl Moments {
    pub fn summary(&self, count: f64) -> ConditionalSummary {
        let mean = self.m1 / count;
        let variance = (self.m2 / count - mean * mean).max(0.0);
        ConditionalSummary { mean, variance }
    }
}

impl AddAssign<&Moments> for Moments {
    fn add_assign(&mut self, rhs: &Moments) {
        self.m1 += rhs.m1;
        self.m2 += rhs.m2;
    }
}

/// Histogram and moments of posterior belief for one run and one hypothesis.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Conditional {
    pub hist: BinHistogram,
    pub moments: Moments,
}

impl Conditional {
    pub fn summary(&self) -> ConditionalSummary {
        self.moments.summary(1.0)
    }
}

/// Per-state accumulation against a true model's weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accumulation {
    pub given_true: Conditional,
    pub given_false: Conditional,
}

impl Accumulation {
    pub fn given(&self, h: Hypothesis) -> &Conditional {
        match h {
            Hypothesis::True => &self.given_true,
            Hypothesis::False => &self.given_false,
        }
    }
}

fn check_cover(table: &JointTable, pbs: &[f64]) -> Result<()> {
    if pbs.len() != table.states() {
        return Err(Error::MissingStates {
            expected: table.states(),
            actual: pbs.len(),
        });
    }
    Ok(())
}

/// Bins `pbs` (indexed by state bits) under `P(e | h)` of the true model.
///
/// A hypothesis value with zero probability contributes an empty histogram.
pub fn accumulate(truth: &JointTable, pbs: &[f64]) -> Result<Accumulation> {
    check_cover(truth, pbs)?;
    let conditional = |h: Hypothesis| {
        let mut out = Conditional::default();
        let ph = truth.prob_h(h);
        if ph <= 0.0 {
            return out;
        }
        for (&j, &pb) in truth.joint_slice(h).iter().zip(pbs) {
            let w = j / ph;
            out.hist.mass[bin_index(pb)] += w;
            out.moments.m1 += w * pb;
            out.moments.m2 += w * pb * pb;
        }
        out
    };
    Ok(Accumulation {
        given_true: conditional(Hypothesis::True),
        given_false: conditional(Hypothesis::False),
    })
}

/// Separation of the two conditional distributions: difference of means over
/// the root of the summed variances. Zero spread gives a signed infinity, or
/// zero when the means coincide.
pub fn dprime(given_true: ConditionalSummary, given_false: ConditionalSummary) -> f64 {
    let diff = given_true.mean - given_false.mean;
    let spread = (given_true.variance + given_false.variance).sqrt();
    if spread > 0.0 {
        diff / spread
    } else if diff == 0.0 {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    }
}

/// `P(bin | H=T) / P(bin | H=F)` for one bin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BinRatio {
    Finite(f64),
    Infinite,
    /// Both masses are zero.
    Undefined,
}

impl BinRatio {
    pub fn new(num: f64, den: f64) -> Self {
        if den > 0.0 {
            BinRatio::Finite(num / den)
        } else if num > 0.0 {
            BinRatio::Infinite
        } else {
            BinRatio::Undefined
        }
    }

    pub fn value(self) -> Option<f64> {
        match self {
            BinRatio::Finite(v) => Some(v),
            BinRatio::Infinite => Some(f64::INFINITY),
            BinRatio::Undefined => None,
        }
    }

    pub fn parse(s: &str) -> Option<BinRatio> {
        match s {
            "inf" => Some(BinRatio::Infinite),
            "undefined" => Some(BinRatio::Undefined),
            _ => s.parse().ok().map(BinRatio::Finite),
        }
    }
}

impl fmt::Display for BinRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinRatio::Finite(v) => match f.precision() {
                Some(p) => write!(f, "{v:.p$}"),
                None => write!(f, "{v}"),
            },
            BinRatio::Infinite => f.write_str("inf"),
            BinRatio::Undefined => f.write_str("undefined"),
        }
    }
}

pub fn lr_table(given_true: &BinHistogram, given_false: &BinHistogram) -> [BinRatio; BIN_COUNT] {
    std::array::from_fn(|b| BinRatio::new(given_true.mass[b], given_false.mass[b]))
}

/// Expected squared error `sum_{h,e} P(h, e) (pb(e) - [h = T])^2`.
pub fn brier(truth: &JointTable, pbs: &[f64]) -> Result<f64> {
    check_cover(truth, pbs)?;
    let t = truth.joint_slice(Hypothesis::True);
    let f = truth.joint_slice(Hypothesis::False);
    Ok(pbs
        .iter()
        .zip(t.iter().zip(f))
        .map(|(&pb, (&jt, &jf))| jt * (pb - 1.0) * (pb - 1.0) + jf * pb * pb)
        .sum())
}
