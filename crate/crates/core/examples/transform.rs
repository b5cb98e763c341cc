//! Map test instances into the law-response feature space, once per
//! selection criterion.
//!
//! ```text
//! cargo run --example transform
//! ```

use llt::law::EmbeddingConfig;
use llt::split::split;
use llt::synthetic::{oscillators, OscillatorSpec};
use llt::transform::{train_laws, transform_test, SelectCriterion};

fn main() -> llt::Result<()> {
    let ds = oscillators(&OscillatorSpec { features: 1, ..OscillatorSpec::default() })?;
    let plan = split(ds.index(), 0.2, Some(3))?;
    let bank = train_laws(&ds, &plan, EmbeddingConfig::with_dim(3)?)?;

    for crit in SelectCriterion::ALL {
        let table = transform_test(&ds, &plan, &bank, crit)?;
        println!(
            "select={crit}: {} rows x {} numeric columns",
            table.num_rows(),
            table.num_numeric_columns()
        );
        if crit == SelectCriterion::default() {
            // first instance block
            for line in table.to_csv()?.lines().take(table.dim + 1) {
                println!("  {line}");
            }
            let first = &table.selections[0];
            println!(
                "  {} / {} picked the law of {}",
                first.instance_id, first.class, first.law_instance
            );
        }
    }
    Ok(())
}
