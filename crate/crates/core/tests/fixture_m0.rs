//! Hand-derivable values on the two-node fixture, checked against both the
//! library and the brute-force oracle to five decimals.

mod oracle;

use calibsim_core::inference::{self, LinearVariant};
use calibsim_core::metrics::{self, ConditionalSummary};
use calibsim_core::model::JointTable;
use calibsim_core::{
    ChainModel, DefaultRule, ErrorRange, EvidentialState, Hypothesis, NeutralBand, Procedure,
};
use oracle::Oracle;
use rand::RngCore;

const T: Hypothesis = Hypothesis::True;
const F: Hypothesis = Hypothesis::False;

fn m0() -> ChainModel {
    ChainModel::new(2, 0.8, &[0.4, 0.7, 0.6, 0.2, 0.5, 0.9]).unwrap()
}

fn st(a: bool, b: bool) -> EvidentialState {
    EvidentialState::from_values(&[a, b]).unwrap()
}

fn close(actual: f64, expected: f64) {
    assert!(
        (actual - expected).abs() < 5e-6,
        "{actual} differs from {expected} at five decimals"
    );
}

#[test]
fn fixture_agrees_with_oracle_layout() {
    let m = m0();
    let o = Oracle::m0();
    let total: f64 = o
        .states()
        .iter()
        .flat_map(|e| [o.joint(true, e), o.joint(false, e)])
        .sum();
    close(total, 1.0);
    for bits in 0..4 {
        let e = oracle::values(2, bits);
        for h in [true, false] {
            let lib = m
                .joint(h.into(), EvidentialState::new(2, bits).unwrap())
                .unwrap();
            assert!((lib - o.joint(h, &e)).abs() < 1e-12);
        }
    }
}

#[test]
fn joint_probabilities() {
    let (m, o) = (m0(), Oracle::m0());
    close(m.joint(T, st(true, true)).unwrap(), 0.504);
    close(o.joint(true, &[true, true]), 0.504);
    close(m.joint(F, st(false, false)).unwrap(), 0.048);
    close(o.joint(false, &[false, false]), 0.048);
}

#[test]
fn posterior_of_true() {
    let (m, o) = (m0(), Oracle::m0());
    for (a, b, want) in [
        (true, true, 0.96923),
        (true, false, 0.46667),
        (false, false, 0.71429),
    ] {
        close(m.posterior_true(st(a, b)).unwrap().value, want);
        close(o.posterior(&[a, b]), want);
    }
}

#[test]
fn evidence_given_hypothesis() {
    let (m, o) = (m0(), Oracle::m0());
    close(
        m.evidence_prob_given_h(st(true, true), T).unwrap().unwrap(),
        0.63,
    );
    close(o.given(&[true, true], true), 0.63);
    close(
        m.evidence_prob_given_h(st(false, false), F)
            .unwrap()
            .unwrap(),
        0.24,
    );
    close(o.given(&[false, false], false), 0.24);
}

#[test]
fn marginal_likelihoods() {
    let (m, o) = (m0(), Oracle::m0());
    for (node, h, want) in [(1, true, 0.78), (1, false, 0.44), (0, true, 0.7)] {
        close(m.marginal_likelihood(node, true, h.into()).unwrap(), want);
        close(o.marginal(node, true, h), want);
    }
}

#[test]
fn conditional_likelihoods() {
    let m = m0();
    close(m.conditional_likelihood(1, true, T, &[true]).unwrap(), 0.9);
    close(
        m.conditional_likelihood(1, false, F, &[false]).unwrap(),
        0.4,
    );
    close(m.conditional_likelihood(0, true, F, &[]).unwrap(), 0.4);
}

#[test]
fn perturbation_at_midpoint() {
    struct Half;
    impl RngCore for Half {
        fn next_u32(&mut self) -> u32 {
            1 << 31
        }
        fn next_u64(&mut self) -> u64 {
            1 << 63
        }
        fn fill_bytes(&mut self, dst: &mut [u8]) {
            dst.fill(0x80);
        }
    }
    let m = ChainModel::new(1, 0.9, &[0.5, 0.5]).unwrap();
    let b = m.perturb(ErrorRange::new(0.4).unwrap(), &mut Half);
    close(b.prior(), 0.85);
}

#[test]
fn procedure_examples() {
    let (m, o) = (m0(), Oracle::m0());
    let rule = DefaultRule::new(1.5, true).unwrap();
    close(
        inference::posterior(Procedure::ProperBayes, &m, st(true, true))
            .unwrap()
            .value,
        0.96923,
    );
    close(
        inference::posterior(Procedure::Default(rule), &m, st(true, false))
            .unwrap()
            .value,
        0.5,
    );
    close(o.default_rule(&[true, false], 1.5, true), 0.5);
    close(
        inference::posterior(Procedure::SimpleLinear, &m, st(true, true))
            .unwrap()
            .value,
        1.0,
    );
}

#[test]
fn naive_bayes_examples() {
    let (m, o) = (m0(), Oracle::m0());
    let band = NeutralBand::default();
    close(
        inference::naive_bayes(&m, st(true, true), None)
            .unwrap()
            .value,
        0.92542,
    );
    close(o.naive(&[true, true], None), 0.92542);
    close(
        inference::naive_bayes(&m, st(false, false), None)
            .unwrap()
            .value,
        0.44,
    );
    close(o.naive(&[false, false], None), 0.44);
    close(
        inference::naive_bayes(&m, st(false, false), Some(band))
            .unwrap()
            .value,
        0.44,
    );
    close(o.naive(&[false, false], Some((2.0 / 3.0, 1.5))), 0.44);
}

#[test]
fn linear_tally_examples() {
    let (m, o) = (m0(), Oracle::m0());
    close(
        inference::linear(&m, st(true, true), LinearVariant::Simple)
            .unwrap()
            .value,
        1.0,
    );
    close(o.simple_linear(&[true, true], None), 1.0);
    close(
        inference::linear(&m, st(false, false), LinearVariant::Simple)
            .unwrap()
            .value,
        1.0 / 3.0,
    );
    close(o.simple_linear(&[false, false], None), 1.0 / 3.0);
    // B=F given A=F has ratio 0.5/0.4 = 1.25, a pro: prior and B against A.
    close(o.conditional_lr(1, &[false, false]), 1.25);
    close(
        inference::linear(&m, st(false, false), LinearVariant::Complex)
            .unwrap()
            .value,
        2.0 / 3.0,
    );
    close(o.complex_linear(&[false, false]), 2.0 / 3.0);
}

#[test]
fn default_rule_examples() {
    let (m, o) = (m0(), Oracle::m0());
    let cases = [
        (true, true, 1.5, 1.0),
        (true, false, 1.5, 0.5),
        (true, true, 2.5, 0.5),
    ];
    for (a, b, t, want) in cases {
        let rule = DefaultRule::new(t, false).unwrap();
        close(
            inference::default_rule(&m, st(a, b), rule).unwrap().value,
            want,
        );
        close(o.default_rule(&[a, b], t, false), want);
    }
    // Counting the prior odds of 4 as a ratio confirms at either threshold.
    let rule = DefaultRule::new(2.5, true).unwrap();
    close(
        inference::default_rule(&m, st(true, true), rule)
            .unwrap()
            .value,
        1.0,
    );
    close(o.default_rule(&[true, true], 2.5, true), 1.0);
}

fn true_posteriors(m: &ChainModel) -> Vec<f64> {
    EvidentialState::all(2)
        .map(|e| m.posterior_true(e).unwrap().value)
        .collect()
}

#[test]
fn accumulate_true_posterior() {
    let m = m0();
    let o = Oracle::m0();
    let table: JointTable = m.joint_table();
    let pbs = true_posteriors(&m);
    let acc = metrics::accumulate(&table, &pbs).unwrap();
    let pb = |e: &[bool]| o.posterior(e);

    let hist = acc.given_true.hist.mass;
    let (ohist, omean, _) = o.histogram(&pb, true);
    for (b, want) in [(8, 0.63), (4, 0.07), (5, 0.15), (6, 0.15)] {
        close(hist[b], want);
        close(ohist[b], want);
    }
    close(acc.given_true.summary().mean, 0.844175);
    close(omean, 0.844175);

    let (_, fmean, _) = o.histogram(&pb, false);
    close(acc.given_false.summary().mean, 0.62330);
    close(fmean, 0.62330);
}

#[test]
fn dprime_uses_summed_variances() {
    let s = |mean, variance| ConditionalSummary { mean, variance };
    close(
        metrics::dprime(s(0.8, 0.04), s(0.2, 0.04)),
        0.6 / 0.08f64.sqrt(),
    );
}

#[test]
fn brier_of_true_posterior() {
    let m = m0();
    let o = Oracle::m0();
    let pbs = true_posteriors(&m);
    let b = metrics::brier(&m.joint_table(), &pbs).unwrap();
    close(b, 0.12466);
    close(o.brier(&|e| o.posterior(e)), 0.12466);
    // Calibrated beliefs: the score equals the expected posterior variance.
    let var: f64 = o
        .states()
        .iter()
        .map(|e| {
            let p = o.posterior(e);
            (o.joint(true, e) + o.joint(false, e)) * p * (1.0 - p)
        })
        .sum();
    close(b, var);
}
