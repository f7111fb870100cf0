//! Sampling properties of the sweep, checked with moderate run counts.

use calibsim_core::experiment::default_error_grid;
use calibsim_core::metrics::BIN_COUNT;
use calibsim_core::{run_experiment, CellResult, ErrorRange, ExperimentConfig, Procedure};

fn sweep(runs: usize) -> Vec<CellResult> {
    let cfg = ExperimentConfig {
        evidence_counts: vec![4],
        runs_per_cell: runs,
        ..ExperimentConfig::new(2024)
    };
    run_experiment(&cfg).unwrap()
}

#[test]
fn histograms_mirror_under_hypothesis_swap() {
    for cell in sweep(4000) {
        for k in 0..BIN_COUNT {
            let t = cell.given_true.mass[k];
            let f = cell.given_false.mass[BIN_COUNT - 1 - k];
            assert!((t - f).abs() < 0.02, "{}: bin {k} {t} vs {f}", cell.id);
        }
        assert!((cell.given_true.total() - 1.0).abs() < 1e-9);
        assert!((cell.given_false.total() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn dprime_falls_with_error() {
    let cells = sweep(4000);
    let grid = default_error_grid();
    for chunk in cells.chunks(grid.len()) {
        let d: Vec<f64> = chunk.iter().map(|c| c.dprime).collect();
        let inversions = d.windows(2).filter(|w| w[1] > w[0] + 0.01).count();
        assert!(inversions <= 1, "{}: {d:?}", chunk[0].id.procedure);
        assert!(d[0] > d[d.len() - 1], "{}: {d:?}", chunk[0].id.procedure);
    }
}

#[test]
fn zero_error_proper_bayes_is_the_true_posterior() {
    let cfg = ExperimentConfig {
        evidence_counts: vec![3],
        error_ranges: vec![ErrorRange::ZERO],
        procedures: vec![Procedure::ProperBayes],
        runs_per_cell: 200,
        ..ExperimentConfig::new(9)
    };
    let cell = &run_experiment(&cfg).unwrap()[0];
    // Calibrated beliefs never score worse than the uninformative 0.5.
    assert!(cell.brier <= 0.25);
    assert_eq!(cell.degenerate_count, 0);
}
