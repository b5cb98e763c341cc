//! Train the law bank of a split dataset and inspect it.
//!
//! ```text
//! cargo run --example law_bank
//! ```

use llt::law::EmbeddingConfig;
use llt::split::split;
use llt::synthetic::{oscillators, OscillatorSpec};
use llt::transform::train_laws;

fn main() -> llt::Result<()> {
    let ds = oscillators(&OscillatorSpec::default())?;
    let plan = split(ds.index(), 0.25, Some(7))?;
    let bank = train_laws(&ds, &plan, EmbeddingConfig::new(4, 1)?)?;

    println!(
        "{} laws = {} training instances x {} features",
        bank.len(),
        plan.tau(),
        bank.features().len()
    );
    for (j, feature) in bank.features().iter().enumerate() {
        let degenerate = bank.laws(j).iter().filter(|l| l.degenerate).count();
        println!("{feature}: {} columns, {degenerate} degenerate", bank.law_matrix(j).cols());
    }
    let csv = bank.to_csv()?;
    for line in csv.lines().take(5) {
        println!("{line}");
    }
    Ok(())
}
