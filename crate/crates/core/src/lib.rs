//! Monte Carlo evaluation of uncertain-reasoning procedures under
//! calibration error.
//!
//! A run samples a "true" chain-structured probability model, perturbs its
//! parameters to obtain a belief model, evaluates an inference procedure on
//! every evidential state of the belief model, and scores the resulting
//! posterior beliefs against the true model.

pub mod config;
pub mod error;
pub mod experiment;
pub mod inference;
pub mod metrics;
pub mod model;
pub mod reference;
pub mod report;
pub mod tables;

pub use config::{load_config, RawConfig};
pub use error::{Error, Result};
pub use experiment::{run_experiment, run_experiment_with, CellId, CellResult, ExperimentConfig};
pub use inference::{DefaultRule, NeutralBand, PosteriorBelief, Procedure};
pub use metrics::{BinHistogram, BinRatio, ConditionalSummary};
pub use model::{ChainModel, ClampBounds, ErrorRange, EvidentialState, Hypothesis};
pub use report::{ResultSet, TextTable};
pub use tables::{Check, TableId};
