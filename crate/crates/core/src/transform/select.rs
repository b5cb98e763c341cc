use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymmetricMatrix};

/// How one response column is picked per (feature, class).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelectCriterion {
    /// Smallest rank sum of variance and absolute mean.
    #[default]
    Rank,
    /// Smallest sample variance.
    Var,
    /// Smallest absolute mean.
    Mean,
}

impl SelectCriterion {
    pub const ALL: [SelectCriterion; 3] =
        [SelectCriterion::Rank, SelectCriterion::Var, SelectCriterion::Mean];

    pub fn as_str(&self) -> &'static str {
        match self {
            SelectCriterion::Rank => "rank",
            SelectCriterion::Var => "var",
            SelectCriterion::Mean => "mean",
        }
    }
}

impl fmt::Display for SelectCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SelectCriterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rank" => Ok(SelectCriterion::Rank),
            "var" => Ok(SelectCriterion::Var),
            "mean" => Ok(SelectCriterion::Mean),
            other => Err(format!("unknown select criterion {other:?} (rank|var|mean)")),
        }
    }
}

/// `S · V`: the response of a test Gram matrix to each training law.
pub fn law_response(test_gram: &SymmetricMatrix, laws: &Matrix) -> Result<Matrix> {
    if test_gram.order() != laws.rows() {
        return Err(Error::DimensionMismatch(format!(
            "Gram matrix of order {} against laws of length {}",
            test_gram.order(),
            laws.rows()
        )));
    }
    test_gram.as_matrix().matmul(laws)
}

/// Sample variance (denominator `n - 1`).
pub fn sample_variance(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mean = mean(x);
    x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)
}

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// The winning column of one class group.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub class_label: String,
    /// Column index in the response matrix.
    pub column: usize,
    pub values: Vec<f64>,
}

/// Ordinal ranks (0-based) ascending by `score`; ties go to the earlier entry.
fn ordinal_ranks(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    let mut ranks = vec![0; scores.len()];
    for (rank, &i) in order.iter().enumerate() {
        ranks[i] = rank;
    }
    ranks
}

fn argmin_by_key<T: PartialOrd + Copy>(keys: &[T]) -> usize {
    let mut best = 0;
    for (i, k) in keys.iter().enumerate().skip(1) {
        if *k < keys[best] {
            best = i;
        }
    }
    best
}

/// Picks one column of `response` per class.
///
/// Classes are reported in the order their first column appears.
pub fn select_column<S: AsRef<str>>(
    response: &Matrix,
    column_classes: &[S],
    criterion: SelectCriterion,
) -> Result<Vec<Selection>> {
    if column_classes.len() != response.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{} class labels for {} columns",
            column_classes.len(),
            response.cols()
        )));
    }
    let mut groups: Vec<(&str, Vec<usize>)> = Vec::new();
    for (j, label) in column_classes.iter().enumerate() {
        let label = label.as_ref();
        match groups.iter_mut().find(|(l, _)| *l == label) {
            Some((_, cols)) => cols.push(j),
            None => groups.push((label, vec![j])),
        }
    }

    groups
        .into_iter()
        .map(|(label, cols)| {
            if cols.is_empty() {
                return Err(Error::EmptyGroup(label.to_owned()));
            }
            let columns: Vec<Vec<f64>> = cols.iter().map(|&j| response.column(j)).collect();
            let var: Vec<f64> = columns.iter().map(|c| sample_variance(c)).collect();
            let abs_mean: Vec<f64> = columns.iter().map(|c| mean(c).abs()).collect();
            let winner = match criterion {
                SelectCriterion::Var => argmin_by_key(&var),
                SelectCriterion::Mean => argmin_by_key(&abs_mean),
                SelectCriterion::Rank => {
                    let rv = ordinal_ranks(&var);
                    let rm = ordinal_ranks(&abs_mean);
                    let sums: Vec<usize> = rv.iter().zip(&rm).map(|(a, b)| a + b).collect();
                    argmin_by_key(&sums)
                }
            };
            Ok(Selection {
                class_label: label.to_owned(),
                column: cols[winner],
                values: columns[winner].clone(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cols(c: &[&[f64]]) -> Matrix {
        Matrix::from_columns(c).unwrap()
    }

    #[test]
    fn response_identity_and_zero() {
        let v = cols(&[&[1.0, 0.0, 0.0], &[0.0, 0.6, 0.8]]);
        let id = SymmetricMatrix::from_upper(3, |a, b| if a == b { 1.0 } else { 0.0 });
        assert_eq!(law_response(&id, &v).unwrap(), v);
        let zero = SymmetricMatrix::from_upper(3, |_, _| 0.0);
        assert_eq!(law_response(&zero, &v).unwrap(), Matrix::zeros(3, 2));
        let small = SymmetricMatrix::from_upper(2, |_, _| 1.0);
        assert!(matches!(law_response(&small, &v), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn tie_example() {
        // A = (0, 0, 0.9), B = (0.3, 0.3, 0.3)
        let p = cols(&[&[0.0, 0.0, 0.9], &[0.3, 0.3, 0.3]]);
        let labels = ["c", "c"];
        let pick = |c| select_column(&p, &labels, c).unwrap()[0].column;
        assert_eq!(pick(SelectCriterion::Var), 1);
        assert_eq!(pick(SelectCriterion::Mean), 0);
        assert_eq!(pick(SelectCriterion::Rank), 0);
    }

    #[test]
    fn single_column_groups() {
        let p = cols(&[&[5.0, 1.0], &[0.0, 0.0]]);
        for c in SelectCriterion::ALL {
            let s = select_column(&p, &["a", "b"], c).unwrap();
            assert_eq!(s[0].column, 0);
            assert_eq!(s[1].column, 1);
            assert_eq!(s[0].class_label, "a");
        }
    }

    #[test]
    fn groups_by_label() {
        let p = cols(&[&[1.0, 2.0], &[0.0, 0.1], &[3.0, 3.0], &[1.0, 1.0]]);
        let s = select_column(&p, &["x", "y", "x", "y"], SelectCriterion::Var).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].class_label.as_str(), s[0].column), ("x", 2));
        assert_eq!((s[1].class_label.as_str(), s[1].column), ("y", 3));
        assert_eq!(s[1].values, vec![1.0, 1.0]);
    }

    #[test]
    fn rank_sum_prefers_balanced_column() {
        // var:  A 0.5 (rank 1), B 2.0 (rank 2), C 0.0 (rank 0)
        // mean: A 0.5 (rank 0), B 1.0 (rank 1), C 10 (rank 2)
        let p = cols(&[&[0.0, 1.0], &[0.0, 2.0], &[10.0, 10.0]]);
        let s = select_column(&p, &["c"; 3], SelectCriterion::Rank).unwrap();
        assert_eq!(s[0].column, 0);
    }

    #[test]
    fn criterion_parse() {
        assert_eq!("var".parse::<SelectCriterion>().unwrap(), SelectCriterion::Var);
        assert!("median".parse::<SelectCriterion>().is_err());
        assert_eq!(SelectCriterion::default(), SelectCriterion::Rank);
    }
}
