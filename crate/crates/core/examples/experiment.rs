//! Repeated split / train / transform / classify runs over a seed ladder.
//!
//! Without arguments a synthetic dataset is used. Pass a UCR train/test
//! pair to run on real data, e.g. PowerCons:
//!
//! ```text
//! cargo run --release --example experiment -- PowerCons_TRAIN.tsv PowerCons_TEST.tsv
//! ```

use std::path::PathBuf;

use llt::dataset::Dataset;
use llt::experiment::{run_experiment_on, ExperimentConfig};
use llt::synthetic::{oscillators, OscillatorSpec};
use llt::transform::SelectCriterion;
use llt::ucr::convert_ucr;

fn main() -> llt::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (dataset, data, dim, ratio, repeats) = match args.as_slice() {
        [train, test, ..] => {
            let out = std::env::temp_dir().join(format!("llt-ucr-{}", std::process::id()));
            let index = convert_ucr(train, test, &out)?;
            let ds = Dataset::load(index)?;
            (ds, out, 5, 0.1, 100)
        }
        _ => {
            let spec = OscillatorSpec { classes: 2, noise: 0.6, ..OscillatorSpec::default() };
            (oscillators(&spec)?, PathBuf::from("<synthetic>"), 4, 0.2, 30)
        }
    };

    for criterion in SelectCriterion::ALL {
        let cfg = ExperimentConfig {
            data: data.clone(),
            dim,
            lag: 1,
            test_ratio: ratio,
            criterion,
            repeats,
            base_seed: 0,
        };
        let summary = run_experiment_on(&dataset, &cfg)?;
        println!(
            "select={criterion}: mean {:.5} std {:.5} over {} runs",
            summary.mean,
            summary.std,
            summary.runs.len()
        );
        for bin in summary.histogram.iter().filter(|b| b.count > 0) {
            println!("  [{:.2}, {:.2}) {}", bin.low, bin.high, "#".repeat(bin.count));
        }
    }
    if args.len() >= 2 {
        let _ = std::fs::remove_dir_all(&data);
    }
    Ok(())
}
