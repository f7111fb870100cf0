mod oracle;

use calibsim_core::experiment::{run_rng, standard_procedures};
use calibsim_core::inference::{self, Evaluator, LinearVariant};
use calibsim_core::metrics::{self, ConditionalSummary};
use calibsim_core::model::param_count;
use calibsim_core::{
    ChainModel, ClampBounds, ErrorRange, EvidentialState, Hypothesis, NeutralBand, Procedure,
};
use oracle::Oracle;
use proptest::prelude::*;

fn model(n: usize, seed: u64) -> ChainModel {
    ChainModel::sample(n, &mut run_rng(seed)).unwrap()
}

fn oracle_of(m: &ChainModel) -> Oracle {
    Oracle::from_fn(m.n(), m.prior(), |node, h, prefix| {
        let code = prefix
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &v)| acc | (usize::from(v) << i));
        m.cond(node, h.into(), code)
    })
}

fn pbs(m: &ChainModel, p: Procedure) -> Vec<f64> {
    Evaluator::new(m)
        .posterior_all(p)
        .iter()
        .map(|b| b.value)
        .collect()
}

/// The same model with the values of evidence node `flip` relabelled.
fn flip_node(m: &ChainModel, flip: usize) -> ChainModel {
    let mut params = vec![m.prior()];
    for node in 0..m.n() {
        for h in [Hypothesis::False, Hypothesis::True] {
            for prefix in 0..1usize << node {
                let q = if node == flip {
                    1.0 - m.cond(node, h, prefix)
                } else if flip < node {
                    m.cond(node, h, prefix ^ (1 << flip))
                } else {
                    m.cond(node, h, prefix)
                };
                params.push(q);
            }
        }
    }
    ChainModel::from_params(m.n(), params).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn joint_sums_to_one(n in 1usize..=8, seed in any::<u64>()) {
        let t = model(n, seed).joint_table();
        let total: f64 = [Hypothesis::True, Hypothesis::False]
            .iter()
            .flat_map(|&h| t.joint_slice(h).iter().copied())
            .sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn joint_matches_enumeration(n in 1usize..=6, seed in any::<u64>()) {
        let m = model(n, seed);
        let o = oracle_of(&m);
        for e in EvidentialState::all(n) {
            let vals = oracle::values(n, e.bits());
            for h in [true, false] {
                prop_assert!((m.joint(h.into(), e).unwrap() - o.joint(h, &vals)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn perturbation_stays_in_window(n in 1usize..=6, seed in any::<u64>(), err in 0.0f64..=2.0) {
        let m = model(n, seed);
        let b = m.perturb(ErrorRange::new(err).unwrap(), &mut run_rng(seed ^ 1));
        prop_assert_eq!(b.params().len(), param_count(n));
        for (&p, &q) in m.params().iter().zip(b.params()) {
            prop_assert!((0.0..=1.0).contains(&q));
            prop_assert!((q - p).abs() <= err / 2.0 + 1e-15);
        }
    }

    #[test]
    fn zero_error_is_identity(n in 1usize..=6, seed in any::<u64>()) {
        let m = model(n, seed);
        prop_assert_eq!(m.perturb(ErrorRange::ZERO, &mut run_rng(seed)), m);
    }

    #[test]
    fn clamp_bounds_hold(n in 1usize..=5, seed in any::<u64>(), lo in 0.0f64..0.5, width in 0.01f64..0.5) {
        let c = ClampBounds::new(lo, lo + width).unwrap();
        let b = model(n, seed).clamp(c);
        prop_assert!(b.params().iter().all(|&q| (lo..=lo + width).contains(&q)));
    }

    #[test]
    fn marginal_likelihood_matches_brute_force(n in 1usize..=6, seed in any::<u64>()) {
        let m = model(n, seed);
        let o = oracle_of(&m);
        for node in 0..n {
            for v in [true, false] {
                for h in [true, false] {
                    let lib = m.marginal_likelihood(node, v, h.into()).unwrap();
                    prop_assert!((lib - o.marginal(node, v, h)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn procedures_match_oracle(n in 1usize..=5, seed in any::<u64>()) {
        let m = model(n, seed);
        let o = oracle_of(&m);
        let band = Some((2.0 / 3.0, 1.5));
        for e in EvidentialState::all(n) {
            let v = oracle::values(n, e.bits());
            let naive = inference::naive_bayes(&m, e, None).unwrap().value;
            prop_assert!((naive - o.naive(&v, None)).abs() < 1e-9);
            let strong = inference::naive_bayes(&m, e, Some(NeutralBand::default())).unwrap().value;
            prop_assert!((strong - o.naive(&v, band)).abs() < 1e-9);
            let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
            prop_assert!(close(inference::linear(&m, e, LinearVariant::Simple).unwrap().value, o.simple_linear(&v, None)));
            prop_assert!(close(inference::linear(&m, e, LinearVariant::Complex).unwrap().value, o.complex_linear(&v)));
            prop_assert!(close(
                inference::linear(&m, e, LinearVariant::Strong(NeutralBand::default())).unwrap().value,
                o.simple_linear(&v, band)
            ));
        }
    }

    #[test]
    fn complement_symmetry(n in 1usize..=5, seed in any::<u64>()) {
        let m = model(n, seed);
        let s = m.swap_hypothesis();
        for p in standard_procedures() {
            let (a, b) = (pbs(&m, p), pbs(&s, p));
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x + y - 1.0).abs() < 1e-12, "{p}: {x} + {y}");
            }
        }
    }

    #[test]
    fn tallies_are_exact_fractions(n in 1usize..=8, seed in any::<u64>()) {
        let m = model(n, seed);
        let items = (n + 1) as f64;
        for p in [Procedure::SimpleLinear, Procedure::ComplexLinear] {
            for x in pbs(&m, p) {
                let k = (x * items).round();
                prop_assert_eq!(x, k / items);
            }
        }
    }

    #[test]
    fn collapsed_band_is_simple(n in 1usize..=6, seed in any::<u64>()) {
        let m = model(n, seed);
        let band = NeutralBand::new(1.0 - f64::EPSILON, 1.0 + 2.0 * f64::EPSILON).unwrap();
        prop_assert_eq!(pbs(&m, Procedure::StrongNaive(band)), pbs(&m, Procedure::SimpleNaive));
        prop_assert_eq!(pbs(&m, Procedure::StrongLinear(band)), pbs(&m, Procedure::SimpleLinear));
    }

    #[test]
    fn brier_is_proper(n in 1usize..=6, seed in any::<u64>(), err in 0.0f64..=2.0) {
        let truth = model(n, seed);
        let t = truth.joint_table();
        let best = metrics::brier(&t, &pbs(&truth, Procedure::ProperBayes)).unwrap();
        let belief = truth.perturb(ErrorRange::new(err).unwrap(), &mut run_rng(!seed));
        for p in standard_procedures() {
            prop_assert!(best <= metrics::brier(&t, &pbs(&belief, p)).unwrap() + 1e-12);
        }
        let half = vec![0.5; 1 << n];
        prop_assert!((metrics::brier(&t, &half).unwrap() - 0.25).abs() < 1e-12);
        prop_assert!(best <= 0.25 + 1e-12);
    }

    #[test]
    fn histogram_ignores_evidence_labels(n in 1usize..=6, seed in any::<u64>(), node in 0usize..6) {
        let node = node % n;
        let m = model(n, seed);
        let flipped = flip_node(&m, node);
        let a = metrics::accumulate(&m.joint_table(), &pbs(&m, Procedure::ProperBayes)).unwrap();
        let b = metrics::accumulate(&flipped.joint_table(), &pbs(&flipped, Procedure::ProperBayes)).unwrap();
        for k in 0..metrics::BIN_COUNT {
            prop_assert!((a.given_true.hist[k] - b.given_true.hist[k]).abs() < 1e-12);
            prop_assert!((a.given_false.hist[k] - b.given_false.hist[k]).abs() < 1e-12);
        }
        prop_assert!((a.given_true.hist.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dprime_is_antisymmetric(m1 in 0.0f64..1.0, m2 in 0.0f64..1.0, v1 in 1e-6f64..0.25, v2 in 1e-6f64..0.25) {
        let a = ConditionalSummary { mean: m1, variance: v1 };
        let b = ConditionalSummary { mean: m2, variance: v2 };
        prop_assert_eq!(metrics::dprime(a, b), -metrics::dprime(b, a));
    }

    #[test]
    fn bins_are_ordered(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(metrics::bin_index(lo) <= metrics::bin_index(hi));
        prop_assert!(metrics::bin_index(hi) < metrics::BIN_COUNT);
    }
}
