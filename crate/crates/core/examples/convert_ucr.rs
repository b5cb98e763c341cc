//! Convert a UCR archive train/test pair into a dataset directory.
//!
//! ```text
//! cargo run --example convert_ucr -- <TRAIN file> <TEST file> <output dir>
//! ```
//!
//! Without arguments a tiny pair is generated and converted.

use llt::dataset::load_instance;
use llt::ucr::convert_ucr;

fn main() -> llt::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let index = if let [train, test, out, ..] = args.as_slice() {
        convert_ucr(train, test, out)?
    } else {
        let dir = std::env::temp_dir().join(format!("llt-convert-{}", std::process::id()));
        std::fs::create_dir_all(&dir).map_err(|e| llt::Error::Io { path: dir.clone(), source: e })?;
        let (train, test) = (dir.join("DEMO_TRAIN.tsv"), dir.join("DEMO_TEST.tsv"));
        let write = |p: &std::path::Path, body: &str| {
            std::fs::write(p, body).map_err(|e| llt::Error::Io { path: p.to_path_buf(), source: e })
        };
        write(&train, "1\t0.5\t0.7\t0.9\n2\t1.0\t-1.0\t1.0\n")?;
        write(&test, "1,0.25,0.5,0.75\n")?;
        convert_ucr(&train, &test, dir.join("dataset"))?
    };

    println!("{} instances, {} classes", index.num_instances(), index.num_classes());
    for (label, refs) in index.classes.iter().zip(&index.instances) {
        let first = &refs[0];
        let series = load_instance(first)?;
        println!(
            "{label}: {} instances, {} has {} samples",
            refs.len(),
            first.instance_id,
            series[0].len()
        );
    }
    Ok(())
}
