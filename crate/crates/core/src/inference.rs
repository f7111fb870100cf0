//! Posterior-belief procedures evaluated against a belief model.
//!
//! Every procedure maps a belief model and an evidential state to a value in
//! `[0, 1]`. The Bayesian procedures produce probabilities; the tally
//! procedures count pros and cons; the default rule jumps to a conclusion.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{ChainModel, EvidentialState, Hypothesis, JointTable, Posterior};

pub type PosteriorBelief = Posterior;

/// Open interval `(lower, upper)` around 1 inside which a likelihood ratio is
/// treated as uninformative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeutralBand {
    lower: f64,
    upper: f64,
}

impl NeutralBand {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower > 0.0 && lower < 1.0 && upper > 1.0 && upper.is_finite()) {
            return Err(Error::NeutralBand { lower, upper });
        }
        Ok(NeutralBand { lower, upper })
    }

    pub fn lower(self) -> f64 {
        self.lower
    }

    pub fn upper(self) -> f64 {
        self.upper
    }

    #[inline]
    pub fn contains(self, ratio: f64) -> bool {
        self.lower < ratio && ratio < self.upper
    }
}

impl Default for NeutralBand {
    fn default() -> Self {
        NeutralBand {
            lower: 2.0 / 3.0,
            upper: 1.5,
        }
    }
}

/// `ln 3`: a ratio of 3 (or 1/3) earns full weight.
pub const DEFAULT_WEIGHT_CAP: f64 = 1.098_612_288_668_109_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LinearVariant {
    /// Ratios conditioned on the observed values of the preceding nodes.
    Complex,
    Simple,
    Strong(NeutralBand),
    /// Votes weighted by `min(|ln ratio| / cap, 1)`.
    Weighted {
        cap: f64,
    },
}

/// Threshold rule: jump to 1.0 (0.0) when some ratio exceeds `threshold`
/// (falls below `1/threshold`) and none crosses the opposite bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefaultRule {
    threshold: f64,
    /// Whether the prior odds take part as one more ratio.
    with_prior: bool,
}

impl DefaultRule {
    pub fn new(threshold: f64, with_prior: bool) -> Result<Self> {
        if !(threshold > 1.0 && threshold.is_finite()) {
            return Err(Error::ProcedureParameter(format!(
                "default-rule threshold must be > 1, got {threshold}"
            )));
        }
        Ok(DefaultRule {
            threshold,
            with_prior,
        })
    }

    pub fn threshold(self) -> f64 {
        self.threshold
    }

    pub fn with_prior(self) -> bool {
        self.with_prior
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Procedure {
    ProperBayes,
    SimpleNaive,
    StrongNaive(NeutralBand),
    ComplexLinear,
    SimpleLinear,
    StrongLinear(NeutralBand),
    WeightedLinear { cap: f64 },
    Default(DefaultRule),
}

impl Procedure {
    pub fn weighted_linear(cap: f64) -> Result<Self> {
        if !(cap > 0.0 && cap.is_finite()) {
            return Err(Error::ProcedureParameter(format!(
                "weighted cap must be > 0, got {cap}"
            )));
        }
        Ok(Procedure::WeightedLinear { cap })
    }

    /// Stable identifier used in result files.
    pub fn label(&self) -> String {
        match self {
            Procedure::ProperBayes => "proper_bayes".into(),
            Procedure::SimpleNaive => "simple_naive".into(),
            Procedure::StrongNaive(_) => "strong_naive".into(),
            Procedure::ComplexLinear => "complex_linear".into(),
            Procedure::SimpleLinear => "simple_linear".into(),
            Procedure::StrongLinear(_) => "strong_linear".into(),
            Procedure::WeightedLinear { .. } => "weighted_linear".into(),
            Procedure::Default(rule) if rule.with_prior => format!("default_t{}", rule.threshold),
            Procedure::Default(rule) => format!("default_evidence_only_t{}", rule.threshold),
        }
    }

    /// Outputs only the atoms 0, 0.5 and 1.
    pub fn is_default(&self) -> bool {
        matches!(self, Procedure::Default(_))
    }
}

impl fmt::Display for Procedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Pro,
    Con,
    Neutral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VoteSource {
    Prior,
    Evidence(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvidenceVote {
    pub source: VoteSource,
    pub direction: Direction,
    pub weight: f64,
    pub ratio: f64,
}

impl EvidenceVote {
    fn signed(&self) -> f64 {
        match self.direction {
            Direction::Pro => self.weight,
            Direction::Con => -self.weight,
            Direction::Neutral => 0.0,
        }
    }
}

/// A likelihood ratio `num / den` with the zero-denominator cases resolved:
/// `x/0` is `+inf`, `0/0` is 1. Either case sets the flag.
#[inline]
fn ratio(num: f64, den: f64) -> (f64, bool) {
    if den > 0.0 {
        (num / den, false)
    } else if num > 0.0 {
        (f64::INFINITY, true)
    } else {
        (1.0, true)
    }
}

/// Evaluates procedures against one belief model, caching its joint table
/// and per-node marginals.
#[derive(Debug, Clone)]
pub struct Evaluator<'a> {
    belief: &'a ChainModel,
    table: JointTable,
}

impl<'a> Evaluator<'a> {
    pub fn new(belief: &'a ChainModel) -> Self {
        Evaluator {
            belief,
            table: belief.joint_table(),
        }
    }

    pub fn table(&self) -> &JointTable {
        &self.table
    }

    pub fn n(&self) -> usize {
        self.belief.n()
    }

    fn prior_ratio(&self) -> (f64, bool) {
        ratio(self.belief.prior(), 1.0 - self.belief.prior())
    }

    /// `B(e_i | H=T) / B(e_i | H=F)` from the marginals.
    fn marginal_ratio(&self, node: usize, value: bool) -> (f64, bool) {
        let t = self.table.marginal(node, value, Hypothesis::True);
        let f = self.table.marginal(node, value, Hypothesis::False);
        match (t, f) {
            (Some(t), Some(f)) => ratio(t, f),
            // The hypothesis value is impossible: the ratio is uninformative.
            _ => (1.0, true),
        }
    }

    /// Ratio of the chain parameters given the observed prefix.
    fn conditional_ratio(&self, node: usize, state: EvidentialState) -> (f64, bool) {
        let prefix = state.prefix(node);
        let t = self.belief.cond(node, Hypothesis::True, prefix);
        let f = self.belief.cond(node, Hypothesis::False, prefix);
        if state.value(node) {
            ratio(t, f)
        } else {
            ratio(1.0 - t, 1.0 - f)
        }
    }

    pub fn proper_bayes(&self, state: EvidentialState) -> PosteriorBelief {
        self.table.posterior(state.bits())
    }

    pub fn naive_bayes(
        &self,
        state: EvidentialState,
        band: Option<NeutralBand>,
    ) -> PosteriorBelief {
        let (mut odds, mut degenerate) = self.prior_ratio();
        for i in 0..self.n() {
            let (mut lr, flag) = self.marginal_ratio(i, state.value(i));
            degenerate |= flag;
            if band.is_some_and(|b| b.contains(lr)) {
                lr = 1.0;
            }
            if lr.is_infinite() || odds.is_infinite() {
                // Saturate; an infinite ratio dominates any zero.
                odds = f64::INFINITY;
            } else {
                odds *= lr;
            }
        }
        let value = if odds.is_infinite() {
            1.0
        } else {
            odds / (1.0 + odds)
        };
        PosteriorBelief { value, degenerate }
    }

    /// The `n + 1` votes (prior first) used by the tally procedures.
    pub fn votes(
        &self,
        state: EvidentialState,
        variant: LinearVariant,
    ) -> (Vec<EvidenceVote>, bool) {
        let mut degenerate = false;
        let mut votes = Vec::with_capacity(self.n() + 1);
        let (r, flag) = self.prior_ratio();
        degenerate |= flag;
        votes.push(make_vote(VoteSource::Prior, r, variant));
        for i in 0..self.n() {
            let (r, flag) = match variant {
                LinearVariant::Complex => self.conditional_ratio(i, state),
                _ => self.marginal_ratio(i, state.value(i)),
            };
            degenerate |= flag;
            votes.push(make_vote(VoteSource::Evidence(i), r, variant));
        }
        (votes, degenerate)
    }

    pub fn linear(&self, state: EvidentialState, variant: LinearVariant) -> PosteriorBelief {
        let (votes, degenerate) = self.votes(state, variant);
        let items = votes.len() as f64;
        let value = match variant {
            LinearVariant::Weighted { .. } => {
                let s: f64 = votes.iter().map(EvidenceVote::signed).sum();
                (0.5 + s / (2.0 * items)).clamp(0.0, 1.0)
            }
            _ => {
                // Integer tally keeps the output exactly k/(n+1).
                let s: i64 = votes
                    .iter()
                    .map(|v| match v.direction {
                        Direction::Pro => 1,
                        Direction::Con => -1,
                        Direction::Neutral => 0,
                    })
                    .sum();
                (s as f64 + items) / (2.0 * items)
            }
        };
        PosteriorBelief { value, degenerate }
    }

    pub fn default_rule(&self, state: EvidentialState, rule: DefaultRule) -> PosteriorBelief {
        let mut degenerate = false;
        let mut confirm = false;
        let mut contradict = false;
        let upper = rule.threshold;
        let lower = 1.0 / rule.threshold;
        let mut check = |(lr, flag): (f64, bool)| {
            degenerate |= flag;
            confirm |= lr > upper;
            contradict |= lr < lower;
        };
        if rule.with_prior {
            check(self.prior_ratio());
        }
        for i in 0..self.n() {
            check(self.marginal_ratio(i, state.value(i)));
        }
        let value = match (confirm, contradict) {
            (true, false) => 1.0,
            (false, true) => 0.0,
            _ => 0.5,
        };
        PosteriorBelief { value, degenerate }
    }

    pub fn posterior(&self, procedure: Procedure, state: EvidentialState) -> PosteriorBelief {
        match procedure {
            Procedure::ProperBayes => self.proper_bayes(state),
            Procedure::SimpleNaive => self.naive_bayes(state, None),
            Procedure::StrongNaive(band) => self.naive_bayes(state, Some(band)),
            Procedure::ComplexLinear => self.linear(state, LinearVariant::Complex),
            Procedure::SimpleLinear => self.linear(state, LinearVariant::Simple),
            Procedure::StrongLinear(band) => self.linear(state, LinearVariant::Strong(band)),
            Procedure::WeightedLinear { cap } => {
                self.linear(state, LinearVariant::Weighted { cap })
            }
            Procedure::Default(rule) => self.default_rule(state, rule),
        }
    }

    /// Posterior for every state, indexed by state bits.
    pub fn posterior_all(&self, procedure: Procedure) -> Vec<PosteriorBelief> {
        EvidentialState::all(self.n())
            .map(|e| self.posterior(procedure, e))
            .collect()
    }
}

fn make_vote(source: VoteSource, ratio: f64, variant: LinearVariant) -> EvidenceVote {
    let neutral = ratio == 1.0
        || match variant {
            LinearVariant::Strong(band) => band.contains(ratio),
            _ => false,
        };
    let direction = if neutral {
        Direction::Neutral
    } else if ratio > 1.0 {
        Direction::Pro
    } else {
        Direction::Con
    };
    let weight = match variant {
        LinearVariant::Weighted { cap } => (ratio.ln().abs() / cap).min(1.0),
        _ => 1.0,
    };
    EvidenceVote {
        source,
        direction,
        weight,
        ratio,
    }
}

fn check_state(belief: &ChainModel, e: EvidentialState) -> Result<()> {
    if e.len() != belief.n() {
        return Err(Error::StateLength {
            expected: belief.n(),
            actual: e.len(),
        });
    }
    Ok(())
}

pub fn posterior(
    procedure: Procedure,
    belief: &ChainModel,
    e: EvidentialState,
) -> Result<PosteriorBelief> {
    check_state(belief, e)?;
    Ok(Evaluator::new(belief).posterior(procedure, e))
}

pub fn proper_bayes(belief: &ChainModel, e: EvidentialState) -> Result<PosteriorBelief> {
    belief.posterior_true(e)
}

pub fn naive_bayes(
    belief: &ChainModel,
    e: EvidentialState,
    band: Option<NeutralBand>,
) -> Result<PosteriorBelief> {
    check_state(belief, e)?;
    Ok(Evaluator::new(belief).naive_bayes(e, band))
}

pub fn linear(
    belief: &ChainModel,
    e: EvidentialState,
    variant: LinearVariant,
) -> Result<PosteriorBelief> {
    check_state(belief, e)?;
    Ok(Evaluator::new(belief).linear(e, variant))
}

pub fn default_rule(
    belief: &ChainModel,
    e: EvidentialState,
    rule: DefaultRule,
) -> Result<PosteriorBelief> {
    check_state(belief, e)?;
    Ok(Evaluator::new(belief).default_rule(e, rule))
}
