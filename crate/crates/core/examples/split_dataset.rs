//! Write a dataset directory, scan it and split it into train and test sets.
//!
//! ```text
//! cargo run --example split_dataset [-- <dataset dir> <test ratio> <seed>]
//! ```

use std::path::PathBuf;

use llt::dataset::scan_dataset;
use llt::split::split;
use llt::synthetic::{oscillators, OscillatorSpec};

fn main() -> llt::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let tmp;
    let root = match args.first() {
        Some(dir) => PathBuf::from(dir),
        None => {
            tmp = std::env::temp_dir().join(format!("llt-split-{}", std::process::id()));
            let spec = OscillatorSpec { per_class: 6, ..OscillatorSpec::default() };
            oscillators(&spec)?.write_to(&tmp)?;
            tmp.clone()
        }
    };
    let ratio: f64 = args.get(1).and_then(|r| r.parse().ok()).unwrap_or(0.3);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(42);

    let index = scan_dataset(&root)?;
    println!(
        "{}: {} classes, {} instances, features {:?}",
        root.display(),
        index.num_classes(),
        index.num_instances(),
        index.feature_names
    );
    let plan = split(&index, ratio, Some(seed))?;
    println!("{} train, {} test", plan.tau(), plan.num_test());
    print!("{}", plan.to_text());

    if args.is_empty() {
        let _ = std::fs::remove_dir_all(&root);
    }
    Ok(())
}
