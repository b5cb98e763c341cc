//! Linear law-based feature space transformation for time-series
//! classification.
//!
//! Every training series is summarized by its *linear law*: the unit vector
//! `v` minimizing `vᵀSv`, where `S = AᵀA` is the Gram matrix of the series'
//! time-delay embedding `A`. Test series are mapped through the laws of each
//! class (`S_test · V`), one response column per class is kept, and the
//! result is a feature space in which matching classes sit near zero.
//!
//! The pipeline mirrors the command line tool:
//!
//! 1. [`dataset::scan_dataset`] / [`dataset::Dataset`]: read a directory of
//!    class folders holding tab-separated instance files.
//! 2. [`split::split`]: seeded class-balanced train/test split.
//! 3. [`transform::train_laws`]: the law bank of the training set.
//! 4. [`transform::transform_test`]: the transformed test table.
//! 5. [`classify::abs_mean_classify`]: pick the class with the smallest
//!    mean absolute response.
//!
//! [`experiment::run_experiment`] repeats steps 2-5 over a ladder of seeds.

pub mod classify;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod experiment;
pub mod law;
pub mod linalg;
pub mod split;
pub mod synthetic;
pub mod transform;
pub mod ucr;

pub use error::{Error, Result};

/// Runs `f` on a rayon pool with `workers` threads; `None` uses the
/// available parallelism.
pub fn with_workers<T, F>(workers: Option<usize>, f: F) -> Result<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        builder = builder.num_threads(n.max(1));
    }
    Ok(builder.build()?.install(f))
}
