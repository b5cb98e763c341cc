//! The linear law of a single series.
//!
//! ```text
//! cargo run --example linear_law
//! ```

use llt::law::{embed_matrix, gram_matrix, linear_law, EmbeddingConfig, Provenance, TimeSeries};

fn main() -> llt::Result<()> {
    // an arithmetic progression: every window satisfies x0 - 2 x1 + x2 = 0
    let line = TimeSeries::new((0..12).map(|t| 3.0 + 0.5 * t as f64).collect())?;
    let cfg = EmbeddingConfig::new(3, 1)?;

    let a = embed_matrix(&line, cfg)?;
    println!("embedding: {} rows x {} columns", a.rows(), cfg.dim());
    let s = gram_matrix(&line, cfg)?;
    println!("gram matrix:");
    for row in s.as_matrix().to_rows() {
        println!("  {row:?}");
    }

    let law = linear_law(&line, cfg, Provenance::new("line", "value", "demo"))?;
    println!("law {:?}, eigenvalue {:e}", law.vector, law.eigenvalue);

    // a sinusoid obeys x0 - 2cos(w) x1 + x2 = 0
    let w = 0.4_f64;
    let wave = TimeSeries::new((0..60).map(|t| (w * t as f64).sin()).collect())?;
    let law = linear_law(&wave, cfg, Provenance::new("wave", "value", "demo"))?;
    let v = &law.vector;
    println!("sinusoid law {v:?}; -v[1]/v[0] = {:.6}, 2cos(w) = {:.6}", -v[1] / v[0], 2.0 * w.cos());

    // lag 2 strides the windows
    let lagged = embed_matrix(&line, EmbeddingConfig::new(3, 2)?)?;
    println!("lag 2 embedding has {} rows", lagged.rows());
    Ok(())
}
