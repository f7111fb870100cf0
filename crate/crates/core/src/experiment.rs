//! Monte Carlo sweep over (procedure, evidence count, error range) cells.
//!
//! Each run samples a true model, perturbs it into a belief model, optionally
//! clamps the beliefs, evaluates every procedure on all evidential states of
//! the belief model, and scores the outputs against the true model's
//! weights. Runs are seeded from `(master seed, n, error range, run index)`
//! only, so every procedure and both clamp settings see the same true and
//! belief models within a slice.
//!
//! Runs are processed in fixed-size chunks on the rayon pool and the chunk
//! totals are folded in chunk order, so results are bit-identical for any
//! worker count.

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::inference::{DefaultRule, Evaluator, NeutralBand, Procedure, DEFAULT_WEIGHT_CAP};
use crate::metrics::{self, BinHistogram, BinRatio, Conditional, ConditionalSummary, BIN_COUNT};
use crate::model::{ChainModel, ClampBounds, ErrorRange, MAX_EVIDENCE};

pub const DEFAULT_RUNS: usize = 20_000;
const CHUNK: usize = 256;

/// The eleven-point grid 0.0, 0.2, ..., 2.0.
pub fn default_error_grid() -> Vec<ErrorRange> {
    (0..=10)
        .map(|k| ErrorRange::new(k as f64 / 5.0).expect("grid lies in [0, 2]"))
        .collect()
}

/// Every procedure with its standard parameters; the default rule appears once
/// per threshold 3/2 and 5/2.
pub fn standard_procedures() -> Vec<Procedure> {
    let band = NeutralBand::default();
    let mut procs = vec![
        Procedure::ProperBayes,
        Procedure::SimpleNaive,
        Procedure::StrongNaive(band),
        Procedure::ComplexLinear,
        Procedure::SimpleLinear,
        Procedure::StrongLinear(band),
        Procedure::WeightedLinear {
            cap: DEFAULT_WEIGHT_CAP,
        },
    ];
    for t in [1.5, 2.5] {
        procs.push(Procedure::Default(
            DefaultRule::new(t, true).expect("threshold > 1"),
        ));
    }
    procs
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub evidence_counts: Vec<usize>,
    pub error_ranges: Vec<ErrorRange>,
    pub runs_per_cell: usize,
    pub master_seed: u64,
    pub procedures: Vec<Procedure>,
    pub clamp: Option<ClampBounds>,
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn new(master_seed: u64) -> Self {
        ExperimentConfig {
            evidence_counts: vec![4, 7],
            error_ranges: default_error_grid(),
            runs_per_cell: DEFAULT_RUNS,
            master_seed,
            procedures: standard_procedures(),
            clamp: None,
            output_dir: PathBuf::from("results"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs_per_cell == 0 {
            return Err(Error::config("runs_per_cell", "must be at least 1"));
        }
        if let Some(&n) = self
            .evidence_counts
            .iter()
            .find(|&&n| n == 0 || n > MAX_EVIDENCE)
        {
            return Err(Error::config(
                "evidence_counts",
                format!("{n} outside 1..={MAX_EVIDENCE}"),
            ));
        }
        Ok(())
    }

    /// Number of cells in the sweep.
    pub fn cell_count(&self) -> usize {
        self.procedures.len() * self.evidence_counts.len() * self.error_ranges.len()
    }

    pub fn cells(&self) -> Vec<CellId> {
        let mut cells = Vec::with_capacity(self.cell_count());
        for &procedure in &self.procedures {
            for &n in &self.evidence_counts {
                for &error_range in &self.error_ranges {
                    cells.push(CellId {
                        procedure,
                        n,
                        error_range,
                        clamp: self.clamp,
                    });
                }
            }
        }
        cells
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellId {
    pub procedure: Procedure,
    pub n: usize,
    pub error_range: ErrorRange,
    pub clamp: Option<ClampBounds>,
}

impl std::fmt::Display for CellId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} n={} err={}",
            self.procedure, self.n, self.error_range
        )?;
        if let Some(c) = self.clamp {
            write!(f, " clamp=[{}, {}]", c.lo(), c.hi())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub id: CellId,
    pub runs: usize,
    /// Mean over runs of the histogram of posterior belief given `H=T`.
    pub given_true: BinHistogram,
    pub given_false: BinHistogram,
    /// Moments of the run-pooled distributions (runs weighted equally).
    pub summary_true: ConditionalSummary,
    pub summary_false: ConditionalSummary,
    pub dprime: f64,
    pub lr: [BinRatio; BIN_COUNT],
    pub brier: f64,
    /// States whose posterior hit a zero denominator, summed over runs.
    pub degenerate_count: u64,
}

#[inline]
fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for one run: splitmix64 folded over the master seed, `n`, the error
/// range in millionths, and finally the run index. The procedure and clamp
/// are deliberately not mixed in. The last step is a bijection of the run
/// index, so runs within a slice never share a seed.
pub fn derive_run_seed(master: u64, cell: &CellId, run_index: u64) -> u64 {
    slice_seed(master, cell.n, cell.error_range, run_index)
}

fn slice_seed(master: u64, n: usize, err: ErrorRange, run_index: u64) -> u64 {
    let mut h = splitmix(master);
    h = splitmix(h ^ n as u64);
    h = splitmix(h ^ err.micros());
    splitmix(h ^ run_index)
}

/// The random stream a run draws its models from.
pub fn run_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// True and belief model for one run.
pub fn run_models(
    n: usize,
    err: ErrorRange,
    clamp: Option<ClampBounds>,
    seed: u64,
) -> Result<(ChainModel, ChainModel)> {
    let mut rng = run_rng(seed);
    let truth = ChainModel::sample(n, &mut rng)?;
    let mut belief = truth.perturb(err, &mut rng);
    if let Some(c) = clamp {
        belief = belief.clamp(c);
    }
    Ok((truth, belief))
}

#[derive(Debug, Clone, Copy, Default)]
struct CellSums {
    given_true: Conditional,
    given_false: Conditional,
    brier: f64,
    degenerate: u64,
}

impl CellSums {
    fn add(&mut self, other: &CellSums) {
        self.given_true.hist += &other.given_true.hist;
        self.given_true.moments += &other.given_true.moments;
        self.given_false.hist += &other.given_false.hist;
        self.given_false.moments += &other.given_false.moments;
        self.brier += other.brier;
        self.degenerate += other.degenerate;
    }

    fn finish(&self, id: CellId, runs: usize) -> CellResult {
        let k = runs as f64;
        let given_true = self.given_true.hist.scaled(1.0 / k);
        let given_false = self.given_false.hist.scaled(1.0 / k);
        let summary_true = self.given_true.moments.summary(k);
        let summary_false = self.given_false.moments.summary(k);
        CellResult {
            id,
            runs,
            given_true,
            given_false,
            summary_true,
            summary_false,
            dprime: metrics::dprime(summary_true, summary_false),
            lr: metrics::lr_table(&given_true, &given_false),
            brier: self.brier / k,
            degenerate_count: self.degenerate,
        }
    }
}

fn run_once(
    n: usize,
    err: ErrorRange,
    clamp: Option<ClampBounds>,
    procedures: &[Procedure],
    seed: u64,
    sums: &mut [CellSums],
) -> Result<()> {
    let (truth, belief) = run_models(n, err, clamp, seed)?;
    let truth = truth.joint_table();
    let eval = Evaluator::new(&belief);
    let mut values = Vec::with_capacity(truth.states());
    for (procedure, sum) in procedures.iter().zip(sums.iter_mut()) {
        values.clear();
        for pb in eval.posterior_all(*procedure) {
            sum.degenerate += u64::from(pb.degenerate);
            values.push(pb.value);
        }
        let acc = metrics::accumulate(&truth, &values)?;
        sum.given_true.hist += &acc.given_true.hist;
        sum.given_true.moments += &acc.given_true.moments;
        sum.given_false.hist += &acc.given_false.hist;
        sum.given_false.moments += &acc.given_false.moments;
        sum.brier += metrics::brier(&truth, &values)?;
    }
    Ok(())
}

/// Runs every procedure of `config` for one `(n, error range)` slice.
pub fn run_slice(config: &ExperimentConfig, n: usize, err: ErrorRange) -> Result<Vec<CellResult>> {
    config.validate()?;
    let procs = &config.procedures;
    let runs = config.runs_per_cell;
    let chunks: Vec<Vec<CellSums>> = (0..runs.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut sums = vec![CellSums::default(); procs.len()];
            for run in c * CHUNK..((c + 1) * CHUNK).min(runs) {
                let seed = slice_seed(config.master_seed, n, err, run as u64);
                run_once(n, err, config.clamp, procs, seed, &mut sums)?;
            }
            Ok(sums)
        })
        .collect::<Result<_>>()?;
    let mut total = vec![CellSums::default(); procs.len()];
    for chunk in &chunks {
        for (t, c) in total.iter_mut().zip(chunk) {
            t.add(c);
        }
    }
    Ok(procs
        .iter()
        .zip(&total)
        .map(|(&procedure, sums)| {
            let id = CellId {
                procedure,
                n,
                error_range: err,
                clamp: config.clamp,
            };
            sums.finish(id, runs)
        })
        .collect())
}

/// One cell. Identical to the corresponding entry of [`run_experiment`].
pub fn run_cell(config: &ExperimentConfig, cell: &CellId) -> Result<CellResult> {
    let single = ExperimentConfig {
        procedures: vec![cell.procedure],
        clamp: cell.clamp,
        ..config.clone()
    };
    let mut out = run_slice(&single, cell.n, cell.error_range)?;
    Ok(out.remove(0))
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<CellResult>> {
    run_experiment_with(config, |_, _, _| {})
}

/// Like [`run_experiment`], calling `progress(done, total, cell)` as each cell
/// completes. Output order is canonical: procedure, then n, then error range.
pub fn run_experiment_with<F>(config: &ExperimentConfig, mut progress: F) -> Result<Vec<CellResult>>
where
    F: FnMut(usize, usize, &CellResult),
{
    config.validate()?;
    let total = config.cell_count();
    if total == 0 {
        return Ok(Vec::new());
    }
    let slices = config.evidence_counts.len() * config.error_ranges.len();
    let mut by_slice = Vec::with_capacity(slices);
    let mut done = 0;
    for &n in &config.evidence_counts {
        for &err in &config.error_ranges {
            let cells = run_slice(config, n, err)?;
            for cell in &cells {
                done += 1;
                progress(done, total, cell);
            }
            by_slice.push(cells);
        }
    }
    let mut out = Vec::with_capacity(total);
    for p in 0..config.procedures.len() {
        for slice in &by_slice {
            out.push(slice[p].clone());
        }
    }
    Ok(out)
}
