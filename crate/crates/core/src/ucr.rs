//! Conversion from the UCR archive text format.
//!
//! A UCR file holds one instance per line: the class label followed by the
//! samples, separated by tabs or commas. Both files of a train/test pair are
//! merged and written as a dataset directory with a single feature named
//! `value`. Sample tokens are copied verbatim, so the written files parse
//! back to exactly the source values.

use std::fs;
use std::path::Path;

use crate::dataset::{ensure_empty_dir, scan_dataset, DatasetIndex};
use crate::error::{Error, Result};

pub const FEATURE_NAME: &str = "value";

struct UcrRow {
    label: String,
    values: Vec<String>,
}

fn parse_ucr(path: &Path) -> Result<Vec<UcrRow>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let delim = if line.contains('\t') { '\t' } else { ',' };
        let mut fields = line.split(delim).map(str::trim);
        let label = fields.next().unwrap_or_default().to_owned();
        if label.is_empty()
            || label.starts_with('.')
            || label.contains(['/', '\\'])
        {
            return Err(Error::parse(path, line_no, format!("unusable class label {label:?}")));
        }
        let mut values = Vec::new();
        for token in fields {
            match token.parse::<f64>() {
                Ok(x) if x.is_finite() => values.push(token.to_owned()),
                _ => {
                    return Err(Error::parse(
                        path,
                        line_no,
                        format!("not a finite number: {token:?}"),
                    ))
                }
            }
        }
        if values.len() < 2 {
            return Err(Error::parse(
                path,
                line_no,
                format!("need at least 2 samples, found {}", values.len()),
            ));
        }
        rows.push(UcrRow { label, values });
    }
    Ok(rows)
}

/// Merges a UCR train/test pair into a dataset directory under `out_root`.
///
/// Instances land in `out_root/class_<label>/instance_<n>.csv`, numbered per
/// class in file order (train first), zero-padded so that lexicographic and
/// numeric order agree. `out_root` must be absent or empty.
pub fn convert_ucr(
    train_file: impl AsRef<Path>,
    test_file: impl AsRef<Path>,
    out_root: impl AsRef<Path>,
) -> Result<DatasetIndex> {
    let out_root = out_root.as_ref();
    let mut rows = parse_ucr(train_file.as_ref())?;
    rows.extend(parse_ucr(test_file.as_ref())?);
    if rows.is_empty() {
        return Err(Error::EmptyDataset("UCR files contain no instances".into()));
    }

    // group by label, keeping first-seen order within each class
    let mut labels: Vec<String> = rows.iter().map(|r| r.label.clone()).collect();
    labels.sort();
    labels.dedup();
    let mut groups: Vec<Vec<&UcrRow>> = vec![Vec::new(); labels.len()];
    for row in &rows {
        let c = labels.binary_search(&row.label).expect("label collected above");
        groups[c].push(row);
    }

    ensure_empty_dir(out_root)?;
    for (label, group) in labels.iter().zip(&groups) {
        let dir = out_root.join(format!("class_{label}"));
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        let width = group.len().to_string().len();
        for (i, row) in group.iter().enumerate() {
            let path = dir.join(format!("instance_{:0width$}.csv", i + 1));
            let mut body = String::with_capacity(16 * row.values.len());
            body.push_str(FEATURE_NAME);
            body.push('\n');
            for v in &row.values {
                body.push_str(v);
                body.push('\n');
            }
            fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        }
    }
    scan_dataset(out_root)
}
