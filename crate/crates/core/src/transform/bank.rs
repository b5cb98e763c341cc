use std::path::Path;

use rayon::prelude::*;

use crate::dataset::{fmt_f64, Dataset};
use crate::error::{Error, Result};
use crate::law::{linear_law, EmbeddingConfig, LinearLaw, Provenance};
use crate::linalg::Matrix;
use crate::split::SplitPlan;

/// All training laws, grouped per feature.
///
/// Within a feature the laws are ordered by class (dataset order) and then by
/// instance id; that order is the column order of the feature's law matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LawBank {
    config: EmbeddingConfig,
    features: Vec<String>,
    classes: Vec<String>,
    laws: Vec<Vec<LinearLaw>>,
}

impl LawBank {
    /// Assembles a bank from per-feature law lists, sorting each list into
    /// bank order (class position in `classes`, then instance id).
    pub fn new(
        config: EmbeddingConfig,
        features: Vec<String>,
        classes: Vec<String>,
        mut laws: Vec<Vec<LinearLaw>>,
    ) -> Result<Self> {
        if laws.len() != features.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} law groups for {} features",
                laws.len(),
                features.len()
            )));
        }
        for (feature, group) in features.iter().zip(laws.iter_mut()) {
            for law in group.iter() {
                if law.dim() != config.dim() {
                    return Err(Error::DimensionMismatch(format!(
                        "law of length {} in a bank of dimension {}",
                        law.dim(),
                        config.dim()
                    )));
                }
                if &law.provenance.feature_id != feature {
                    return Err(Error::DimensionMismatch(format!(
                        "law for feature {:?} filed under {feature:?}",
                        law.provenance.feature_id
                    )));
                }
                if !classes.contains(&law.provenance.class_label) {
                    return Err(Error::DimensionMismatch(format!(
                        "law for unknown class {:?}",
                        law.provenance.class_label
                    )));
                }
            }
            let class_pos = |l: &LinearLaw| {
                classes
                    .iter()
                    .position(|c| *c == l.provenance.class_label)
                    .unwrap_or(usize::MAX)
            };
            group.sort_by(|a, b| {
                class_pos(a)
                    .cmp(&class_pos(b))
                    .then_with(|| a.provenance.instance_id.cmp(&b.provenance.instance_id))
            });
            if let Some(missing) = classes
                .iter()
                .find(|c| !group.iter().any(|l| &l.provenance.class_label == *c))
            {
                return Err(Error::EmptyGroup(format!("{missing} (feature {feature:?})")));
            }
        }
        Ok(LawBank {
            config,
            features,
            classes,
            laws,
        })
    }

    pub fn config(&self) -> EmbeddingConfig {
        self.config
    }

    pub fn features(&self) -> &[String] {
        &self.features
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    /// Laws of feature `j` in column order.
    pub fn laws(&self, feature: usize) -> &[LinearLaw] {
        &self.laws[feature]
    }

    /// Total number of laws across features.
    pub fn len(&self) -> usize {
        self.laws.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `dim x q` matrix whose columns are the laws of feature `j`.
    pub fn law_matrix(&self, feature: usize) -> Matrix {
        let cols: Vec<&[f64]> = self.laws[feature].iter().map(|l| l.vector.as_slice()).collect();
        Matrix::from_columns(&cols).expect("bank laws share the bank dimension")
    }

    /// Class label of each column of `law_matrix(j)`.
    pub fn column_classes(&self, feature: usize) -> Vec<&str> {
        self.laws[feature]
            .iter()
            .map(|l| l.provenance.class_label.as_str())
            .collect()
    }

    /// CSV with columns `feature,class,instance,eigenvalue,degenerate,v_1..v_l`,
    /// one row per law in bank order.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = ["feature", "class", "instance", "eigenvalue", "degenerate"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        header.extend((1..=self.config.dim()).map(|i| format!("v_{i}")));
        w.write_record(&header)?;
        for group in &self.laws {
            for law in group {
                let mut rec = vec![
                    law.provenance.feature_id.clone(),
                    law.provenance.class_label.clone(),
                    law.provenance.instance_id.clone(),
                    fmt_f64(law.eigenvalue),
                    law.degenerate.to_string(),
                ];
                rec.extend(law.vector.iter().map(|&x| fmt_f64(x)));
                w.write_record(&rec)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::io("<memory>", e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_csv()?).map_err(|e| Error::io(path, e))
    }

    /// Parses the CSV form. The lag is not part of the file and must be
    /// supplied; the dimension is the number of `v_*` columns.
    ///
    /// Features keep their first-appearance order. Classes are taken from
    /// `classes` when given (normally the dataset's class list), otherwise
    /// from the file in first-appearance order.
    pub fn from_csv(text: &str, lag: usize, classes: Option<&[String]>) -> Result<Self> {
        let path = Path::new("<laws>");
        let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let header = r.headers()?.clone();
        let fixed = ["feature", "class", "instance", "eigenvalue", "degenerate"];
        if header.len() < fixed.len() + 2 || header.iter().take(5).ne(fixed) {
            return Err(Error::parse(path, 1, "unexpected law bank header"));
        }
        let dim = header.len() - fixed.len();
        for (i, name) in header.iter().skip(5).enumerate() {
            if name != format!("v_{}", i + 1) {
                return Err(Error::parse(path, 1, format!("unexpected column {name:?}")));
            }
        }
        let config = EmbeddingConfig::new(dim, lag)?;

        let mut features: Vec<String> = Vec::new();
        let mut seen_classes: Vec<String> = Vec::new();
        let mut laws: Vec<Vec<LinearLaw>> = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let line = i + 2;
            let rec = rec?;
            let num = |k: usize| -> Result<f64> {
                rec[k]
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::parse(path, line, format!("bad number {:?}", &rec[k])))
            };
            let degenerate = match &rec[4] {
                "true" => true,
                "false" => false,
                other => return Err(Error::parse(path, line, format!("bad flag {other:?}"))),
            };
            let law = LinearLaw {
                vector: (5..5 + dim).map(num).collect::<Result<_>>()?,
                eigenvalue: num(3)?,
                provenance: Provenance::new(&rec[2], &rec[0], &rec[1]),
                degenerate,
            };
            let j = match features.iter().position(|f| f == &rec[0]) {
                Some(j) => j,
                None => {
                    features.push(rec[0].to_owned());
                    laws.push(Vec::new());
                    features.len() - 1
                }
            };
            if !seen_classes.iter().any(|c| c == &rec[1]) {
                seen_classes.push(rec[1].to_owned());
            }
            laws[j].push(law);
        }
        let classes = classes.map_or(seen_classes, <[String]>::to_vec);
        LawBank::new(config, features, classes, laws)
    }

    pub fn read_csv(path: impl AsRef<Path>, lag: usize, classes: Option<&[String]>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        LawBank::from_csv(&text, lag, classes)
    }
}

/// Computes the law of every training series, `tau * m` in total.
pub fn train_laws(dataset: &Dataset, plan: &SplitPlan, config: EmbeddingConfig) -> Result<LawBank> {
    let index = dataset.index();
    let plan = plan.clone().validated(index)?;

    let mut train: Vec<(usize, usize)> = Vec::with_capacity(plan.tau());
    for (c, cs) in plan.classes.iter().enumerate() {
        for id in &cs.train {
            let i = index.instance_index(c, id).expect("validated plan");
            train.push((c, i));
        }
    }

    let per_instance: Vec<Vec<LinearLaw>> = train
        .par_iter()
        .map(|&(c, i)| {
            let r = &index.instances[c][i];
            dataset
                .series(c, i)
                .iter()
                .zip(&index.feature_names)
                .map(|(series, feature)| {
                    linear_law(
                        series,
                        config,
                        Provenance::new(&r.instance_id, feature, &r.class_label),
                    )
                    .map_err(|e| with_context(e, &r.class_label, &r.instance_id, feature))
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let m = index.num_features();
    let mut laws: Vec<Vec<LinearLaw>> = vec![Vec::with_capacity(train.len()); m];
    for instance_laws in per_instance {
        for (j, law) in instance_laws.into_iter().enumerate() {
            laws[j].push(law);
        }
    }
    LawBank::new(
        config,
        index.feature_names.clone(),
        index.classes.clone(),
        laws,
    )
}

pub(crate) fn with_context(err: Error, class: &str, instance: &str, feature: &str) -> Error {
    match err {
        Error::SeriesTooShort { len, dim, .. } => Error::SeriesTooShort {
            len,
            dim,
            context: Some(format!(
                "class {class:?}, instance {instance:?}, feature {feature:?}"
            )),
        },
        other => other,
    }
}
