//! Seeded experiment runner for the free product density model.
//!
//! A run reads a key-value configuration, sweeps its density, length and
//! radius lists, executes the named experiment once per trial with a
//! counter-derived seed, and emits one CSV row per trial plus a JSON summary
//! of success fractions with Wilson intervals.

pub mod config;
pub mod experiments;
pub mod record;
pub mod run;

pub use config::{ExperimentConfig, SweepPoint};
pub use experiments::{list_experiments, lookup, CatalogEntry, Experiment, CATALOG};
pub use record::{strip_timing, wilson, Aggregate, TrialRecord, Value};
pub use run::{run, trial_seed, RunOptions, RunResult};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("unknown experiment {0:?}")]
    UnknownExperiment(String),
    #[error("config: {0}")]
    Config(String),
    #[error("trial {index} out of range, the sweep has {total}")]
    NoSuchTrial { index: usize, total: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
