//! Chain-factored distributions over a binary hypothesis and `n` binary
//! evidence nodes.
//!
//! A model stores `P(H=T)` followed by, for each evidence node `i`, the
//! probability `P(E_i=T | H, E_0..E_{i-1})` for every assignment of the
//! hypothesis and the preceding nodes. Only the `=T` half of each
//! conditional is stored, so any table of values in `[0, 1]` describes a
//! coherent joint distribution.
//!
//! # Layout
//!
//! `params[0]` is the prior. Node `i` owns the block starting at
//! `2^(i+1) - 1` of length `2^(i+1)`. Within the block, the entry for
//! hypothesis `h` and prefix `p` sits at `h * 2^i + p`, where `h` is 1 for
//! `T` and bit `j` of `p` holds the value of node `j`. Sampling and
//! perturbation walk `params` front to back, which fixes the draw order for
//! a given random stream.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported number of evidence nodes.
pub const MAX_EVIDENCE: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hypothesis {
    False,
    True,
}

impl Hypothesis {
    pub const BOTH: [Hypothesis; 2] = [Hypothesis::True, Hypothesis::False];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Hypothesis::False => 0,
            Hypothesis::True => 1,
        }
    }

    pub fn is_true(self) -> bool {
        self == Hypothesis::True
    }
}

impl From<bool> for Hypothesis {
    fn from(v: bool) -> Self {
        if v {
            Hypothesis::True
        } else {
            Hypothesis::False
        }
    }
}

/// A complete true/false assignment to the evidence nodes. Node `i` is bit `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvidentialState {
    n: u8,
    bits: u16,
}

impl EvidentialState {
    pub fn new(n: usize, bits: usize) -> Result<Self> {
        check_n(n)?;
        if bits >= 1 << n {
            return Err(Error::StateLength {
                expected: n,
                actual: usize::BITS as usize - bits.leading_zeros() as usize,
            });
        }
        Ok(EvidentialState {
            n: n as u8,
            bits: bits as u16,
        })
    }

    /// Builds a state from node values in node order (A, B, C, ...).
    pub fn from_values(values: &[bool]) -> Result<Self> {
        let bits = values
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, &v)| acc | (usize::from(v) << i));
        EvidentialState::new(values.len(), bits)
    }

    /// All `2^n` states in counting order of their bit encoding.
    pub fn all(n: usize) -> impl Iterator<Item = EvidentialState> {
        (0..1usize << n).map(move |bits| EvidentialState {
            n: n as u8,
            bits: bits as u16,
        })
    }

    #[inline]
    pub fn len(self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn bits(self) -> usize {
        self.bits as usize
    }

    #[inline]
    pub fn value(self, node: usize) -> bool {
        (self.bits >> node) & 1 == 1
    }

    /// Encoding of the values of nodes `0..node`.
    #[inline]
    pub fn prefix(self, node: usize) -> usize {
        self.bits as usize & ((1 << node) - 1)
    }
}

impl fmt::Display for EvidentialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            if i > 0 {
                f.write_str(",")?;
            }
            let name = (b'A' + (i as u8 % 26)) as char;
            write!(f, "{}={}", name, if self.value(i) { 'T' } else { 'F' })?;
        }
        Ok(())
    }
}

/// Width of the uniform perturbation interval applied to each parameter.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ErrorRange(f64);

impl ErrorRange {
    pub const ZERO: ErrorRange = ErrorRange(0.0);

    pub fn new(range: f64) -> Result<Self> {
        if !(0.0..=2.0).contains(&range) {
            return Err(Error::ErrorRange(range));
        }
        Ok(ErrorRange(range))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// The range in millionths; used as a stable key for seeding and lookups.
    pub fn micros(self) -> u64 {
        (self.0 * 1e6).round() as u64
    }
}

impl fmt::Display for ErrorRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.micros() as f64 / 1e6;
        if v.fract() == 0.0 {
            write!(f, "{v:.1}")
        } else {
            write!(f, "{v}")
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_EVIDENCE {
        return Err(Error::EvidenceCount(n));
    }
    Ok(())
}

/// Number of stored parameters for `n` evidence nodes: `2^(n+1) - 1`.
#[inline]
pub fn param_count(n: usize) -> usize {
    (1 << (n + 1)) - 1
}

#[inline]
fn block_offset(node: usize) -> usize {
    (1 << (node + 1)) - 1
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainModel {
    n: usize,
    params: Vec<f64>,
}

impl ChainModel {
    /// Builds a model from the prior and the conditional table in storage
    /// order (node 0's block, then node 1's, ...).
    pub fn new(n: usize, prior: f64, cond: &[f64]) -> Result<Self> {
        check_n(n)?;
        let expected = param_count(n) - 1;
        if cond.len() != expected {
            return Err(Error::ShapeMismatch {
                n,
                expected,
                actual: cond.len(),
            });
        }
        let mut params = Vec::with_capacity(expected + 1);
        params.push(prior);
        params.extend_from_slice(cond);
        ChainModel::from_params(n, params)
    }

    pub fn from_params(n: usize, params: Vec<f64>) -> Result<Self> {
        check_n(n)?;
        if params.len() != param_count(n) {
            return Err(Error::ShapeMismatch {
                n,
                expected: param_count(n) - 1,
                actual: params.len().saturating_sub(1),
            });
        }
        if let Some((index, &value)) = params
            .iter()
            .enumerate()
            .find(|(_, p)| !(0.0..=1.0).contains(*p))
        {
            return Err(Error::ParameterOutOfRange { index, value });
        }
        Ok(ChainModel { n, params })
    }

    /// Draws every parameter independently from U[0, 1).
    pub fn sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_n(n)?;
        let params = (0..param_count(n)).map(|_| rng.random::<f64>()).collect();
        Ok(ChainModel { n, params })
    }

    /// Replaces each parameter `p` with a uniform draw on
    /// `[max(0, p - range/2), min(1, p + range/2)]`.
    ///
    /// One uniform is consumed per parameter even when the range is zero, so
    /// the stream position after the call does not depend on the range.
    pub fn perturb<R: Rng + ?Sized>(&self, err: ErrorRange, rng: &mut R) -> ChainModel {
        let half = err.value() / 2.0;
        let params = self
            .params
            .iter()
            .map(|&p| {
                let u = rng.random::<f64>();
                if half == 0.0 {
                    return p;
                }
                let lo = (p - half).max(0.0);
                let hi = (p + half).min(1.0);
                lo + (hi - lo) * u
            })
            .collect();
        ChainModel { n: self.n, params }
    }

    pub fn clamp(&self, bounds: ClampBounds) -> ChainModel {
        ChainModel {
            n: self.n,
            params: self.params.iter().map(|&p| bounds.apply(p)).collect(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn params(&self) -> &[f64] {
        &self.params
    }

    #[inline]
    pub fn prior(&self) -> f64 {
        self.params[0]
    }

    /// `P(E_node=T | h, prefix)`.
    #[inline]
    pub fn cond(&self, node: usize, h: Hypothesis, prefix: usize) -> f64 {
        self.params[block_offset(node) + (h.index() << node) + prefix]
    }

    fn check_state(&self, e: EvidentialState) -> Result<()> {
        if e.len() != self.n {
            return Err(Error::StateLength {
                expected: self.n,
                actual: e.len(),
            });
        }
        Ok(())
    }

    pub fn prob_h(&self, h: Hypothesis) -> f64 {
        match h {
            Hypothesis::True => self.prior(),
            Hypothesis::False => 1.0 - self.prior(),
        }
    }

    /// Chain product `P(h) * prod_i P(e_i | h, e_0..e_{i-1})`.
    pub fn joint(&self, h: Hypothesis, e: EvidentialState) -> Result<f64> {
        self.check_state(e)?;
        let mut p = self.prob_h(h);
        for i in 0..self.n {
            let q = self.cond(i, h, e.prefix(i));
            p *= if e.value(i) { q } else { 1.0 - q };
        }
        Ok(p)
    }

    /// `P(H=T | e)`, or 0.5 flagged as degenerate when `P(e) = 0`.
    pub fn posterior_true(&self, e: EvidentialState) -> Result<Posterior> {
        let t = self.joint(Hypothesis::True, e)?;
        let f = self.joint(Hypothesis::False, e)?;
        Ok(Posterior::ratio(t, t + f))
    }

    /// `P(e | h)`; `None` when `P(h) = 0`.
    pub fn evidence_prob_given_h(&self, e: EvidentialState, h: Hypothesis) -> Result<Option<f64>> {
        let ph = self.prob_h(h);
        let j = self.joint(h, e)?;
        Ok((ph > 0.0).then(|| j / ph))
    }

    /// `P(E_node = value | h)`, marginalising the other nodes exactly.
    /// `None` when `P(h) = 0`.
    pub fn marginal_likelihood(&self, node: usize, value: bool, h: Hypothesis) -> Option<f64> {
        assert!(node < self.n, "node {node} out of range for n={}", self.n);
        // Forward pass over the prefix distribution P(e_0..e_{node-1} | h).
        let mut dist = vec![1.0];
        for i in 0..node {
            let mut next = vec![0.0; dist.len() * 2];
            for (p, &w) in dist.iter().enumerate() {
                let q = self.cond(i, h, p);
                next[p] = w * (1.0 - q);
                next[p | (1 << i)] = w * q;
            }
            dist = next;
        }
        if self.prob_h(h) == 0.0 {
            return None;
        }
        let t: f64 = dist
            .iter()
            .enumerate()
            .map(|(p, &w)| w * self.cond(node, h, p))
            .sum();
        Some(if value { t } else { 1.0 - t })
    }

    /// `P(E_node = value | h, prefix)` read straight from the chain table.
    pub fn conditional_likelihood(
        &self,
        node: usize,
        value: bool,
        h: Hypothesis,
        prefix: &[bool],
    ) -> Result<f64> {
        if node >= self.n || prefix.len() != node {
            return Err(Error::StateLength {
                expected: node,
                actual: prefix.len(),
            });
        }
        let code = prefix
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, &v)| acc | (usize::from(v) << i));
        let q = self.cond(node, h, code);
        Ok(if value { q } else { 1.0 - q })
    }

    /// Relabels `H=T` and `H=F`.
    pub fn swap_hypothesis(&self) -> ChainModel {
        let mut params = self.params.clone();
        params[0] = 1.0 - params[0];
        for i in 0..self.n {
            let off = block_offset(i);
            let half = 1 << i;
            let (f, t) = params[off..off + 2 * half].split_at_mut(half);
            f.swap_with_slice(t);
        }
        ChainModel { n: self.n, params }
    }

    pub fn joint_table(&self) -> JointTable {
        JointTable::new(self)
    }
}

/// A probability ratio that may have had a zero denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Posterior {
    pub value: f64,
    pub degenerate: bool,
}

impl Posterior {
    #[inline]
    pub fn ratio(num: f64, den: f64) -> Self {
        if den > 0.0 {
            Posterior {
                value: num / den,
                degenerate: false,
            }
        } else {
            Posterior {
                value: 0.5,
                degenerate: true,
            }
        }
    }
}

/// Bounds applied to belief parameters after perturbation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClampBounds {
    lo: f64,
    hi: f64,
}

impl ClampBounds {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo >= hi {
            return Err(Error::ClampBounds { lo, hi });
        }
        Ok(ClampBounds { lo, hi })
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn apply(self, p: f64) -> f64 {
        p.max(self.lo).min(self.hi)
    }
}

/// The full joint over `(H, E)` laid out by state bits, plus the per-node
/// marginals derived from it.
#[derive(Debug, Clone)]
pub struct JointTable {
    n: usize,
    prior: f64,
    /// `joint[h.index()][state]`.
    joint: [Vec<f64>; 2],
    /// `marginal_true[h.index()][node] = P(E_node = T | h)`; NaN when `P(h) = 0`.
    marginal_true: [Vec<f64>; 2],
}

impl JointTable {
    fn new(model: &ChainModel) -> Self {
        let n = model.n;
        let mut joint = [Vec::new(), Vec::new()];
        let mut marginal_true = [vec![0.0; n], vec![0.0; n]];
        for h in Hypothesis::BOTH {
            let ph = model.prob_h(h);
            let mut dist = Vec::with_capacity(1 << n);
            dist.push(ph);
            for (i, marginal) in marginal_true[h.index()].iter_mut().enumerate() {
                let len = dist.len();
                dist.resize(len * 2, 0.0);
                let mut mass_t = 0.0;
                for p in 0..len {
                    let w = dist[p];
                    let q = model.cond(i, h, p);
                    mass_t += w * q;
                    dist[p] = w * (1.0 - q);
                    dist[p | len] = w * q;
                }
                *marginal = if ph > 0.0 { mass_t / ph } else { f64::NAN };
            }
            joint[h.index()] = dist;
        }
        JointTable {
            n,
            prior: model.prior(),
            joint,
            marginal_true,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn states(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn prob_h(&self, h: Hypothesis) -> f64 {
        match h {
            Hypothesis::True => self.prior,
            Hypothesis::False => 1.0 - self.prior,
        }
    }

    #[inline]
    pub fn joint(&self, h: Hypothesis, state: usize) -> f64 {
        self.joint[h.index()][state]
    }

    pub fn joint_slice(&self, h: Hypothesis) -> &[f64] {
        &self.joint[h.index()]
    }

    #[inline]
    pub fn posterior(&self, state: usize) -> Posterior {
        let t = self.joint[1][state];
        Posterior::ratio(t, t + self.joint[0][state])
    }

    /// `P(E_node = value | h)`; `None` when `P(h) = 0`.
    #[inline]
    pub fn marginal(&self, node: usize, value: bool, h: Hypothesis) -> Option<f64> {
        let t = self.marginal_true[h.index()][node];
        if t.is_nan() {
            return None;
        }
        Some(if value { t } else { 1.0 - t })
    }

    /// Weights `P(e | h)` over all states; `None` when `P(h) = 0`.
    pub fn weights_given(&self, h: Hypothesis) -> Option<Vec<f64>> {
        let ph = self.prob_h(h);
        (ph > 0.0).then(|| self.joint[h.index()].iter().map(|j| j / ph).collect())
    }
}
