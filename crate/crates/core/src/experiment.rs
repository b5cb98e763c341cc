//! Repeated split / train / transform / classify runs.
//!
//! Run `r` uses split seed `base_seed + r`, so any single run can be
//! reproduced on its own. Runs execute on the current rayon pool and are
//! reported in run order.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::classify::{abs_mean_classify, prediction_accuracy};
use crate::dataset::{ensure_dir, fmt_f64, Dataset};
use crate::error::{Error, Result};
use crate::law::EmbeddingConfig;
use crate::split::split;
use crate::transform::{train_laws, transform_test, SelectCriterion};

/// Histogram bin width for accuracies.
pub const BIN_WIDTH: f64 = 0.02;
const BINS: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub data: PathBuf,
    pub dim: usize,
    pub lag: usize,
    pub test_ratio: f64,
    pub criterion: SelectCriterion,
    pub repeats: usize,
    pub base_seed: u64,
}

impl ExperimentConfig {
    fn validate(&self) -> Result<EmbeddingConfig> {
        if self.repeats == 0 {
            return Err(Error::InvalidExperiment("repeats must be at least 1".into()));
        }
        if !(self.test_ratio > 0.0 && self.test_ratio < 1.0) {
            return Err(Error::InvalidRatio(self.test_ratio));
        }
        EmbeddingConfig::new(self.dim, self.lag)
    }

    pub fn seed_for(&self, run: usize) -> u64 {
        self.base_seed.wrapping_add(run as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunResult {
    pub run_index: usize,
    pub seed: u64,
    pub accuracy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub low: f64,
    pub high: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSummary {
    pub config: ExperimentConfig,
    pub runs: Vec<RunResult>,
    pub mean: f64,
    /// Sample standard deviation; 0 when `std_defined` is false (one run).
    pub std: f64,
    pub std_defined: bool,
    pub histogram: Vec<HistogramBin>,
}

/// Mean and sample standard deviation (`None` for fewer than two values).
pub fn mean_std(values: &[f64]) -> (f64, Option<f64>) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, None);
    }
    let ss: f64 = values.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, Some((ss / (n - 1.0)).sqrt()))
}

/// Counts accuracies in bins of width 0.02 over `[0, 1]` (the last bin is
/// closed), dropping empty bins after the last occupied one.
pub fn histogram(accuracies: &[f64]) -> Vec<HistogramBin> {
    let mut counts = [0usize; BINS];
    for &a in accuracies {
        // tolerate 0.88 * 50 landing a hair under 44
        let k = ((a * BINS as f64) + 1e-9).floor().max(0.0) as usize;
        counts[k.min(BINS - 1)] += 1;
    }
    let last = counts.iter().rposition(|&c| c > 0).map_or(0, |k| k + 1);
    (0..last)
        .map(|k| HistogramBin {
            low: k as f64 / BINS as f64,
            high: (k + 1) as f64 / BINS as f64,
            count: counts[k],
        })
        .collect()
}

/// Accuracy of one run on an already loaded dataset.
pub fn run_once(
    dataset: &Dataset,
    embedding: EmbeddingConfig,
    test_ratio: f64,
    criterion: SelectCriterion,
    seed: u64,
) -> Result<f64> {
    let plan = split(dataset.index(), test_ratio, Some(seed))?;
    let bank = train_laws(dataset, &plan, embedding)?;
    let table = transform_test(dataset, &plan, &bank, criterion)?;
    prediction_accuracy(&abs_mean_classify(&table)?)
}

/// Runs the experiment on `dataset` (ignoring `cfg.data`).
pub fn run_experiment_on(dataset: &Dataset, cfg: &ExperimentConfig) -> Result<ExperimentSummary> {
    let embedding = cfg.validate()?;
    let runs: Vec<RunResult> = (0..cfg.repeats)
        .into_par_iter()
        .map(|run| {
            let seed = cfg.seed_for(run);
            run_once(dataset, embedding, cfg.test_ratio, cfg.criterion, seed)
                .map(|accuracy| RunResult {
                    run_index: run,
                    seed,
                    accuracy,
                })
                .map_err(|e| Error::Run {
                    run,
                    seed,
                    source: Box::new(e),
                })
        })
        .collect::<Result<_>>()?;

    let accuracies: Vec<f64> = runs.iter().map(|r| r.accuracy).collect();
    let (mean, std) = mean_std(&accuracies);
    Ok(ExperimentSummary {
        config: cfg.clone(),
        histogram: histogram(&accuracies),
        runs,
        mean,
        std: std.unwrap_or(0.0),
        std_defined: std.is_some(),
    })
}

/// Loads `cfg.data` and runs the experiment.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentSummary> {
    cfg.validate()?;
    let dataset = Dataset::open(&cfg.data)?;
    run_experiment_on(&dataset, cfg)
}

impl ExperimentSummary {
    pub fn runs_csv(&self) -> String {
        let mut out = String::from("run_index,seed,accuracy\n");
        for r in &self.runs {
            let _ = writeln!(out, "{},{},{}", r.run_index, r.seed, fmt_f64(r.accuracy));
        }
        out
    }

    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("bin_low,bin_high,count\n");
        for b in &self.histogram {
            let _ = writeln!(out, "{},{},{}", fmt_f64(b.low), fmt_f64(b.high), b.count);
        }
        out
    }

    /// `key=value` lines: statistics followed by the configuration.
    pub fn summary_text(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let _ = writeln!(out, "mean={}", fmt_f64(self.mean));
        let _ = writeln!(out, "std={}", fmt_f64(self.std));
        let _ = writeln!(out, "std_defined={}", self.std_defined);
        let _ = writeln!(out, "repeats={}", c.repeats);
        let _ = writeln!(out, "data={}", c.data.display());
        let _ = writeln!(out, "dim={}", c.dim);
        let _ = writeln!(out, "lag={}", c.lag);
        let _ = writeln!(out, "test_ratio={}", fmt_f64(c.test_ratio));
        let _ = writeln!(out, "select={}", c.criterion);
        let _ = writeln!(out, "base_seed={}", c.base_seed);
        out
    }

    /// Writes `runs.csv`, `summary.txt` and `histogram.csv` into `dir`.
    pub fn write_to(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        ensure_dir(dir)?;
        for (name, body) in [
            ("runs.csv", self.runs_csv()),
            ("summary.txt", self.summary_text()),
            ("histogram.csv", self.histogram_csv()),
        ] {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        }
        Ok(())
    }
}
