//! Brute-force reference implementations. Everything here enumerates full
//! joint assignments directly and shares no arithmetic with the library.

#![allow(dead_code)]

use std::collections::HashMap;

/// A chain model written out as `P(node = T | h, earlier node values)`.
#[derive(Debug, Clone)]
pub struct Oracle {
    pub n: usize,
    pub prior: f64,
    pub cond: HashMap<(usize, bool, Vec<bool>), f64>,
}

/// The evidence values of state `bits`, node `i` first.
pub fn values(n: usize, bits: usize) -> Vec<bool> {
    (0..n).map(|i| bits >> i & 1 == 1).collect()
}

pub fn all_prefixes(len: usize) -> Vec<Vec<bool>> {
    (0..1usize << len).map(|b| values(len, b)).collect()
}

impl Oracle {
    pub fn from_fn(n: usize, prior: f64, mut f: impl FnMut(usize, bool, &[bool]) -> f64) -> Self {
        let mut cond = HashMap::new();
        for node in 0..n {
            for h in [true, false] {
                for p in all_prefixes(node) {
                    let v = f(node, h, &p);
                    cond.insert((node, h, p), v);
                }
            }
        }
        Oracle { n, prior, cond }
    }

    /// The small two-node fixture used throughout the tests.
    pub fn m0() -> Self {
        let table: HashMap<(usize, bool, Vec<bool>), f64> = [
            ((0, true, vec![]), 0.7),
            ((0, false, vec![]), 0.4),
            ((1, true, vec![true]), 0.9),
            ((1, true, vec![false]), 0.5),
            ((1, false, vec![true]), 0.2),
            ((1, false, vec![false]), 0.6),
        ]
        .into_iter()
        .collect();
        Oracle {
            n: 2,
            prior: 0.8,
            cond: table,
        }
    }

    pub fn p_h(&self, h: bool) -> f64 {
        if h {
            self.prior
        } else {
            1.0 - self.prior
        }
    }

    pub fn states(&self) -> Vec<Vec<bool>> {
        all_prefixes(self.n)
    }

    pub fn joint(&self, h: bool, e: &[bool]) -> f64 {
        let mut p = self.p_h(h);
        for (i, &v) in e.iter().enumerate() {
            let t = self.cond[&(i, h, e[..i].to_vec())];
            p *= if v { t } else { 1.0 - t };
        }
        p
    }

    pub fn posterior(&self, e: &[bool]) -> f64 {
        let t = self.joint(true, e);
        t / (t + self.joint(false, e))
    }

    pub fn given(&self, e: &[bool], h: bool) -> f64 {
        self.joint(h, e) / self.p_h(h)
    }

    /// `P(node = v | h)` by summing the joint over every full state.
    pub fn marginal(&self, node: usize, v: bool, h: bool) -> f64 {
        let s: f64 = self
            .states()
            .iter()
            .filter(|e| e[node] == v)
            .map(|e| self.joint(h, e))
            .sum();
        s / self.p_h(h)
    }

    pub fn marginal_lr(&self, node: usize, v: bool) -> f64 {
        self.marginal(node, v, true) / self.marginal(node, v, false)
    }

    /// Ratio conditioned on the actual values of the earlier nodes.
    pub fn conditional_lr(&self, node: usize, e: &[bool]) -> f64 {
        let p = |h: bool| {
            let t = self.cond[&(node, h, e[..node].to_vec())];
            if e[node] {
                t
            } else {
                1.0 - t
            }
        };
        p(true) / p(false)
    }

    pub fn prior_odds(&self) -> f64 {
        self.prior / (1.0 - self.prior)
    }

    pub fn naive(&self, e: &[bool], band: Option<(f64, f64)>) -> f64 {
        let mut odds = self.prior_odds();
        for (i, &v) in e.iter().enumerate() {
            let lr = self.marginal_lr(i, v);
            if !band.is_some_and(|(lo, hi)| lo < lr && lr < hi) {
                odds *= lr;
            }
        }
        odds / (1.0 + odds)
    }

    /// Tally of pro and con votes, prior included, with ratios inside the
    /// open band treated as neutral.
    pub fn tally(&self, ratios: &[f64], band: Option<(f64, f64)>) -> f64 {
        let (mut pro, mut con) = (0i32, 0i32);
        for &r in ratios {
            let neutral = r == 1.0 || band.is_some_and(|(lo, hi)| lo < r && r < hi);
            if neutral {
                continue;
            }
            if r > 1.0 {
                pro += 1;
            } else {
                con += 1;
            }
        }
        let m = ratios.len() as f64;
        0.5 + f64::from(pro - con) / (2.0 * m)
    }

    pub fn simple_linear(&self, e: &[bool], band: Option<(f64, f64)>) -> f64 {
        let mut ratios = vec![self.prior_odds()];
        ratios.extend(e.iter().enumerate().map(|(i, &v)| self.marginal_lr(i, v)));
        self.tally(&ratios, band)
    }

    pub fn complex_linear(&self, e: &[bool]) -> f64 {
        let mut ratios = vec![self.prior_odds()];
        ratios.extend((0..self.n).map(|i| self.conditional_lr(i, e)));
        self.tally(&ratios, None)
    }

    pub fn default_rule(&self, e: &[bool], threshold: f64, with_prior: bool) -> f64 {
        let mut ratios: Vec<f64> = e
            .iter()
            .enumerate()
            .map(|(i, &v)| self.marginal_lr(i, v))
            .collect();
        if with_prior {
            ratios.push(self.prior_odds());
        }
        let up = ratios.iter().any(|&r| r > threshold);
        let down = ratios.iter().any(|&r| r < 1.0 / threshold);
        match (up, down) {
            (true, false) => 1.0,
            (false, true) => 0.0,
            _ => 0.5,
        }
    }

    /// Nine-bin histogram and mean of `pb` under `P(e | h)`.
    pub fn histogram(&self, pb: &dyn Fn(&[bool]) -> f64, h: bool) -> ([f64; 9], f64, f64) {
        let edges = [0.11, 0.22, 0.33, 0.44, 0.56, 0.67, 0.78, 0.89];
        let mut hist = [0.0; 9];
        let (mut m1, mut m2) = (0.0, 0.0);
        for e in self.states() {
            let w = self.given(&e, h);
            let x = pb(&e);
            let bin = edges.iter().take_while(|&&edge| x >= edge).count();
            hist[bin] += w;
            m1 += w * x;
            m2 += w * x * x;
        }
        (hist, m1, m2 - m1 * m1)
    }

    pub fn brier(&self, pb: &dyn Fn(&[bool]) -> f64) -> f64 {
        let mut s = 0.0;
        for e in self.states() {
            for h in [true, false] {
                let target = if h { 1.0 } else { 0.0 };
                s += self.joint(h, &e) * (pb(&e) - target).powi(2);
            }
        }
        s
    }
}
