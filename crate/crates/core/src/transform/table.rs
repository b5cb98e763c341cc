use std::path::Path;

use rayon::prelude::*;

use super::bank::{with_context, LawBank};
use super::select::{law_response, select_column, SelectCriterion};
use crate::dataset::{fmt_f64, Dataset};
use crate::error::{Error, Result};
use crate::law::gram_matrix;
use crate::linalg::Matrix;
use crate::split::SplitPlan;

/// One numeric output column: the selected response of `feature` to the
/// laws of `class`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawColumn {
    pub feature: String,
    pub class: String,
}

impl LawColumn {
    pub fn name(&self) -> String {
        format!("law_{}_{}", self.feature, self.class)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    /// One value per [`LawColumn`], in column order.
    pub values: Vec<f64>,
    /// True class of the test instance.
    pub label: String,
    pub instance_id: String,
    /// Position within the instance block, `0..dim`.
    pub row_index: usize,
}

/// Which training law won a (test instance, feature, class) selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionRecord {
    pub instance_id: String,
    pub label: String,
    pub feature: String,
    pub class: String,
    /// Column of the feature's law matrix.
    pub column: usize,
    pub law_instance: String,
}

/// Transformed test set: `dim` rows per test instance, one column per
/// (feature, class), plus the label.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedTable {
    pub columns: Vec<LawColumn>,
    pub rows: Vec<TableRow>,
    /// Rows per instance block.
    pub dim: usize,
    /// Empty when the table was read back from CSV.
    pub selections: Vec<SelectionRecord>,
}

impl TransformedTable {
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Law columns plus the label column.
    pub fn num_numeric_columns(&self) -> usize {
        self.columns.len() + 1
    }

    /// Contiguous rows of each test instance, in table order.
    pub fn blocks(&self) -> Result<Vec<&[TableRow]>> {
        if self.dim == 0 || !self.rows.len().is_multiple_of(self.dim) {
            return Err(Error::MalformedTable(format!(
                "{} rows do not form blocks of {}",
                self.rows.len(),
                self.dim
            )));
        }
        let blocks: Vec<&[TableRow]> = self.rows.chunks(self.dim).collect();
        for b in &blocks {
            let first = &b[0];
            let ok = b.iter().enumerate().all(|(r, row)| {
                row.row_index == r
                    && row.instance_id == first.instance_id
                    && row.label == first.label
                    && row.values.len() == self.columns.len()
            });
            if !ok {
                return Err(Error::MalformedTable(format!(
                    "ragged block for instance {:?}",
                    first.instance_id
                )));
            }
        }
        Ok(blocks)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = self.columns.iter().map(LawColumn::name).collect();
        header.extend(["label", "instance_id", "row_index"].map(String::from));
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec: Vec<String> = row.values.iter().map(|&x| fmt_f64(x)).collect();
            rec.push(row.label.clone());
            rec.push(row.instance_id.clone());
            rec.push(row.row_index.to_string());
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::io("<memory>", e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_csv()?).map_err(|e| Error::io(path, e))
    }

    /// CSV with `instance_id,label,feature,class,column,law_instance`.
    pub fn selections_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["instance_id", "label", "feature", "class", "column", "law_instance"])?;
        for s in &self.selections {
            w.write_record([
                s.instance_id.as_str(),
                &s.label,
                &s.feature,
                &s.class,
                &s.column.to_string(),
                &s.law_instance,
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::io("<memory>", e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Parses the CSV form.
    ///
    /// Column names are `law_<feature>_<class>`; since both parts may contain
    /// underscores, the class is recovered as the longest label (from the
    /// `label` column) that the name ends with.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let header = r.headers()?.clone();
        let n = header.len();
        if n < 4 || header.iter().skip(n - 3).ne(["label", "instance_id", "row_index"]) {
            return Err(Error::MalformedTable(
                "last columns must be label,instance_id,row_index".into(),
            ));
        }
        let law_names: Vec<&str> = header.iter().take(n - 3).collect();
        if let Some(bad) = law_names.iter().find(|h| !h.starts_with("law_")) {
            return Err(Error::MalformedTable(format!("unexpected column {bad:?}")));
        }

        let mut rows = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let rec = rec?;
            let line = i + 2;
            let values = (0..n - 3)
                .map(|k| {
                    rec[k].parse::<f64>().map_err(|_| {
                        Error::MalformedTable(format!("line {line}: bad number {:?}", &rec[k]))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let row_index = rec[n - 1].parse().map_err(|_| {
                Error::MalformedTable(format!("line {line}: bad row_index {:?}", &rec[n - 1]))
            })?;
            rows.push(TableRow {
                values,
                label: rec[n - 3].to_owned(),
                instance_id: rec[n - 2].to_owned(),
                row_index,
            });
        }

        let mut labels: Vec<&str> = rows.iter().map(|r| r.label.as_str()).collect();
        labels.sort_unstable();
        labels.dedup();
        let columns = law_names
            .iter()
            .map(|name| {
                let body = &name["law_".len()..];
                labels
                    .iter()
                    .filter(|l| {
                        body.len() > l.len() + 1
                            && body.ends_with(*l)
                            && body.as_bytes()[body.len() - l.len() - 1] == b'_'
                    })
                    .max_by_key(|l| l.len())
                    .map(|l| LawColumn {
                        feature: body[..body.len() - l.len() - 1].to_owned(),
                        class: (*l).to_owned(),
                    })
                    .ok_or_else(|| {
                        Error::MalformedTable(format!("column {name:?} matches no class label"))
                    })
            })
            .collect::<Result<Vec<_>>>()?;

        let dim = rows
            .iter()
            .skip(1)
            .position(|r| r.row_index == 0)
            .map_or(rows.len(), |p| p + 1);
        let table = TransformedTable {
            columns,
            rows,
            dim,
            selections: Vec::new(),
        };
        table.blocks()?;
        Ok(table)
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        TransformedTable::from_csv(&text)
    }
}

struct Block {
    rows: Vec<TableRow>,
    selections: Vec<SelectionRecord>,
}

/// Maps every test instance into the law-response feature space.
///
/// For each test instance and feature the Gram matrix is built with the
/// bank's embedding, multiplied against the feature's law matrix, and one
/// column per class is kept according to `criterion`.
pub fn transform_test(
    dataset: &Dataset,
    plan: &SplitPlan,
    bank: &LawBank,
    criterion: SelectCriterion,
) -> Result<TransformedTable> {
    let index = dataset.index();
    let plan = plan.clone().validated(index)?;
    if bank.features() != index.feature_names.as_slice() {
        return Err(Error::DimensionMismatch(format!(
            "law bank features {:?} differ from dataset features {:?}",
            bank.features(),
            index.feature_names
        )));
    }
    if bank.classes() != index.classes.as_slice() {
        return Err(Error::DimensionMismatch(format!(
            "law bank classes {:?} differ from dataset classes {:?}",
            bank.classes(),
            index.classes
        )));
    }

    let config = bank.config();
    let dim = config.dim();
    let law_matrices: Vec<Matrix> = (0..bank.features().len()).map(|j| bank.law_matrix(j)).collect();
    let column_classes: Vec<Vec<&str>> =
        (0..bank.features().len()).map(|j| bank.column_classes(j)).collect();
    let columns: Vec<LawColumn> = index
        .feature_names
        .iter()
        .flat_map(|f| {
            index.classes.iter().map(move |c| LawColumn {
                feature: f.clone(),
                class: c.clone(),
            })
        })
        .collect();

    let mut test: Vec<(usize, usize)> = Vec::with_capacity(plan.num_test());
    for (c, cs) in plan.classes.iter().enumerate() {
        for id in &cs.test {
            test.push((c, index.instance_index(c, id).expect("validated plan")));
        }
    }

    let blocks: Vec<Block> = test
        .par_iter()
        .map(|&(c, i)| -> Result<Block> {
            let r = &index.instances[c][i];
            let mut values = vec![Vec::with_capacity(columns.len()); dim];
            let mut selections = Vec::with_capacity(columns.len());
            for (j, series) in dataset.series(c, i).iter().enumerate() {
                let feature = &index.feature_names[j];
                let gram = gram_matrix(series, config)
                    .map_err(|e| with_context(e, &r.class_label, &r.instance_id, feature))?;
                let response = law_response(&gram, &law_matrices[j])?;
                let picked = select_column(&response, &column_classes[j], criterion)?;
                // groups come out in bank class order, which equals index order
                debug_assert!(picked.iter().map(|s| &s.class_label).eq(index.classes.iter()));
                for sel in picked {
                    for (row, v) in values.iter_mut().zip(&sel.values) {
                        row.push(*v);
                    }
                    selections.push(SelectionRecord {
                        instance_id: r.instance_id.clone(),
                        label: r.class_label.clone(),
                        feature: feature.clone(),
                        law_instance: bank.laws(j)[sel.column].provenance.instance_id.clone(),
                        class: sel.class_label,
                        column: sel.column,
                    });
                }
            }
            let rows = values
                .into_iter()
                .enumerate()
                .map(|(row_index, values)| TableRow {
                    values,
                    label: r.class_label.clone(),
                    instance_id: r.instance_id.clone(),
                    row_index,
                })
                .collect();
            Ok(Block { rows, selections })
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(blocks.len() * dim);
    let mut selections = Vec::new();
    for b in blocks {
        rows.extend(b.rows);
        selections.extend(b.selections);
    }
    Ok(TransformedTable {
        columns,
        rows,
        dim,
        selections,
    })
}
