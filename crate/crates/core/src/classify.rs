//! Absolute-mean classification of transformed test instances.

use crate::error::{Error, Result};
use crate::transform::TransformedTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub instance_id: String,
    pub truth: String,
    pub predicted: String,
}

/// Predicts, for every instance block, the class whose law columns have the
/// smallest mean absolute value over all features and rows. Ties go to the
/// class whose columns come first.
pub fn abs_mean_classify(table: &TransformedTable) -> Result<Vec<Prediction>> {
    let mut classes: Vec<&str> = Vec::new();
    let class_of: Vec<usize> = table
        .columns
        .iter()
        .map(|col| match classes.iter().position(|c| *c == col.class) {
            Some(k) => k,
            None => {
                classes.push(&col.class);
                classes.len() - 1
            }
        })
        .collect();
    if classes.is_empty() {
        return Err(Error::MalformedTable("no law columns".into()));
    }

    table
        .blocks()?
        .into_iter()
        .map(|block| {
            let mut sums = vec![0.0; classes.len()];
            let mut counts = vec![0usize; classes.len()];
            for row in block {
                for (v, &k) in row.values.iter().zip(&class_of) {
                    sums[k] += v.abs();
                    counts[k] += 1;
                }
            }
            let mut best = 0;
            let mut best_score = f64::INFINITY;
            for (k, (s, n)) in sums.iter().zip(&counts).enumerate() {
                let score = s / *n as f64;
                if score < best_score {
                    best = k;
                    best_score = score;
                }
            }
            Ok(Prediction {
                instance_id: block[0].instance_id.clone(),
                truth: block[0].label.clone(),
                predicted: classes[best].to_owned(),
            })
        })
        .collect()
}

/// Fraction of positions where `predictions` and `truths` agree.
pub fn accuracy<T: PartialEq>(predictions: &[T], truths: &[T]) -> Result<f64> {
    if predictions.len() != truths.len() || predictions.is_empty() {
        return Err(Error::LengthMismatch {
            left: predictions.len(),
            right: truths.len(),
        });
    }
    let hits = predictions.iter().zip(truths).filter(|(p, t)| p == t).count();
    Ok(hits as f64 / predictions.len() as f64)
}

/// Accuracy of a list of predictions against their own truths.
pub fn prediction_accuracy(predictions: &[Prediction]) -> Result<f64> {
    let p: Vec<&str> = predictions.iter().map(|p| p.predicted.as_str()).collect();
    let t: Vec<&str> = predictions.iter().map(|p| p.truth.as_str()).collect();
    accuracy(&p, &t)
}

/// CSV with `instance_id,label,predicted`.
pub fn predictions_csv(predictions: &[Prediction]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["instance_id", "label", "predicted"])?;
    for p in predictions {
        w.write_record([&p.instance_id, &p.truth, &p.predicted])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::io("<memory>", e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
