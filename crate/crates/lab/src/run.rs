//! Seeded, trial-parallel execution of a configured sweep.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value as Json;

use crate::config::ExperimentConfig;
use crate::experiments::{lookup, prepare, run_trial, CatalogEntry};
use crate::record::{aggregate, summary_json, to_csv, Aggregate, TrialRecord};
use crate::LabError;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads; `None` uses the rayon default.
    pub workers: Option<usize>,
    /// Replaces the master seed from the configuration.
    pub seed: Option<u64>,
    /// Run only this global trial index.
    pub replay: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub config: ExperimentConfig,
    pub entry: &'static CatalogEntry,
    pub records: Vec<TrialRecord>,
    pub aggregates: Vec<Aggregate>,
}

/// Seed of trial `index`: the first word of ChaCha stream `index` keyed by
/// the master seed, so any trial can be rebuilt alone.
pub fn trial_seed(master: u64, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index as u64);
    rng.next_u64()
}

pub fn run(config: &ExperimentConfig, options: &RunOptions) -> Result<RunResult, LabError> {
    let entry = lookup(&config.experiment).ok_or_else(|| LabError::UnknownExperiment(config.experiment.clone()))?;
    let mut config = config.clone();
    if let Some(s) = options.seed {
        config.seed = s;
    }
    config.validate()?;
    let points = config.points();
    let total = points.len() * config.trials;
    let indices: Vec<usize> = match options.replay {
        Some(i) if i >= total => return Err(LabError::NoSuchTrial { index: i, total }),
        Some(i) => vec![i],
        None => (0..total).collect(),
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(options.workers.unwrap_or(0)).build().map_err(|e| LabError::Config(e.to_string()))?;
    let records = pool.install(|| {
        let used: Vec<usize> = points.iter().map(|p| p.index).filter(|&p| indices.iter().any(|i| i / config.trials == p)).collect();
        let prepared: Vec<(usize, Result<_, String>)> = used.par_iter().map(|&p| (p, prepare(entry, &config, &points[p]))).collect();
        indices
            .par_iter()
            .map(|&index| {
                let point = &points[index / config.trials];
                let seed = trial_seed(config.seed, index);
                let start = Instant::now();
                let prep = &prepared.iter().find(|(p, _)| *p == point.index).expect("prepared point").1;
                let result = prep.as_ref().map_err(|e| e.clone()).and_then(|prep| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    run_trial(entry, &config, point, prep, seed, &mut rng)
                });
                let (outcome, error) = match result {
                    Ok(o) => (Some(o), None),
                    Err(e) => (None, Some(e)),
                };
                TrialRecord {
                    experiment: entry.name.to_string(),
                    point: point.index,
                    trial: index % config.trials,
                    index,
                    seed,
                    density: point.density,
                    ell: point.ell,
                    m: point.m,
                    error,
                    outcome,
                    elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                }
            })
            .collect::<Vec<_>>()
    });
    let aggregates = aggregate(&points, entry.columns, &records);
    Ok(RunResult { config, entry, records, aggregates })
}

impl RunResult {
    pub fn csv(&self) -> String {
        to_csv(self.entry.columns, &self.records)
    }

    pub fn summary(&self) -> Json {
        summary_json(self.entry.name, self.entry.anchor, self.config.seed, &self.config.to_text(), &self.aggregates)
    }

    /// Write the CSV and JSON files into `dir`, returning their paths.
    pub fn write(&self, dir: &Path) -> Result<(PathBuf, PathBuf), LabError> {
        std::fs::create_dir_all(dir)?;
        let csv_path = dir.join(&self.config.csv);
        let json_path = dir.join(&self.config.json);
        std::fs::write(&csv_path, self.csv())?;
        std::fs::write(&json_path, serde_json::to_string_pretty(&self.summary()).expect("json") + "\n")?;
        Ok((csv_path, json_path))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::strip_timing;

    fn config(text: &str) -> ExperimentConfig {
        ExperimentConfig::parse(text).unwrap()
    }

    #[test]
    fn seeds_are_counter_based() {
        assert_eq!(trial_seed(1, 5), trial_seed(1, 5));
        assert_ne!(trial_seed(1, 5), trial_seed(1, 6));
        assert_ne!(trial_seed(1, 5), trial_seed(2, 5));
    }

    #[test]
    fn unknown_experiment() {
        let c = config("experiment = nope");
        assert!(matches!(run(&c, &RunOptions::default()), Err(LabError::UnknownExperiment(n)) if n == "nope"));
    }

    #[test]
    fn worker_count_and_replay_do_not_change_rows() {
        let c = config("experiment = small-cancellation-rate\ndensity = 1/16, 1/8\nell = 12\ntrials = 6\nseed = 3");
        let one = run(&c, &RunOptions { workers: Some(1), ..RunOptions::default() }).unwrap();
        let two = run(&c, &RunOptions { workers: Some(2), ..RunOptions::default() }).unwrap();
        assert_eq!(strip_timing(&one.csv()), strip_timing(&two.csv()));
        assert_eq!(one.summary(), two.summary());
        let replay = run(&c, &RunOptions { replay: Some(8), ..RunOptions::default() }).unwrap();
        assert_eq!(replay.records.len(), 1);
        let (a, b) = (&replay.records[0], &one.records[8]);
        assert_eq!((a.seed, &a.outcome, a.point, a.trial), (b.seed, &b.outcome, b.point, b.trial));
        assert!(matches!(run(&c, &RunOptions { replay: Some(12), ..RunOptions::default() }), Err(LabError::NoSuchTrial { .. })));
    }

    #[test]
    fn aggregates_recompute_from_rows() {
        let c = config("experiment = dihedral-transition\ndensity = 3/10\nell = 10\ntrials = 5\nseed = 4");
        let r = run(&c, &RunOptions::default()).unwrap();
        let a = &r.aggregates[0];
        assert_eq!(a.successes, r.records.iter().filter(|t| t.success()).count());
        assert_eq!(a.trials, 5);
    }

    #[test]
    fn point_errors_stay_in_rows() {
        // ℓ = 3 has no line-fiber fixture; the sweep continues past it
        let c = config("experiment = antipodality-suite\ndensity = 1/16\nell = 3, 2\ntrials = 1");
        let r = run(&c, &RunOptions::default()).unwrap();
        assert!(r.records[0].error.is_some());
        assert!(r.records[1].error.is_none());
    }
}
