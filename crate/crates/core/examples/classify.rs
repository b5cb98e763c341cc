//! Classify transformed test instances by the smallest mean absolute
//! response.
//!
//! ```text
//! cargo run --example classify
//! ```

use llt::classify::{abs_mean_classify, prediction_accuracy};
use llt::law::EmbeddingConfig;
use llt::split::split;
use llt::synthetic::progression_vs_noise;
use llt::transform::{train_laws, transform_test, SelectCriterion};

fn main() -> llt::Result<()> {
    let ds = progression_vs_noise(10, 50, 1)?;
    let plan = split(ds.index(), 0.3, Some(11))?;
    let bank = train_laws(&ds, &plan, EmbeddingConfig::with_dim(3)?)?;
    let table = transform_test(&ds, &plan, &bank, SelectCriterion::Rank)?;

    let predictions = abs_mean_classify(&table)?;
    for p in &predictions {
        println!("{:<14} true {:<12} predicted {}", p.instance_id, p.truth, p.predicted);
    }
    println!("accuracy {}", prediction_accuracy(&predictions)?);
    Ok(())
}
