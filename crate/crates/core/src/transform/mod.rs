//! Law bank construction and the test-set feature transformation.

mod bank;
mod select;
mod table;

pub use bank::{train_laws, LawBank};
pub use select::{law_response, mean, sample_variance, select_column, SelectCriterion, Selection};
pub use table::{transform_test, LawColumn, SelectionRecord, TableRow, TransformedTable};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{ClassData, Dataset};
    use crate::law::{EmbeddingConfig, TimeSeries};
    use crate::split::{split, ClassSplit, SplitPlan};
    use crate::Error;

    fn ts(v: Vec<f64>) -> TimeSeries {
        TimeSeries::new(v).unwrap()
    }

    fn progression(a: f64, b: f64, k: usize) -> Vec<f64> {
        (0..k).map(|t| a + b * t as f64).collect()
    }

    fn wiggle(seed: u64, k: usize) -> Vec<f64> {
        (0..k)
            .map(|t| ((t as f64 * 1.7 + seed as f64).sin() * 3.0).round() + (t % 3) as f64)
            .collect()
    }

    fn dataset() -> Dataset {
        let class = |label: &str, make: &dyn Fn(u64) -> Vec<f64>| ClassData {
            label: label.into(),
            instances: (0..3)
                .map(|i| (format!("i{i}"), vec![ts(make(i))]))
                .collect(),
        };
        Dataset::from_classes(
            vec!["x".into()],
            vec![
                class("c1", &|i| progression(i as f64, 0.5 + i as f64, 20)),
                class("c2", &|i| wiggle(i, 20)),
            ],
        )
        .unwrap()
    }

    fn manual_plan(train: [&[&str]; 2], test: [&[&str]; 2]) -> SplitPlan {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect();
        SplitPlan {
            classes: vec![
                ClassSplit { label: "c1".into(), train: s(train[0]), test: s(test[0]) },
                ClassSplit { label: "c2".into(), train: s(train[1]), test: s(test[1]) },
            ],
            test_ratio: None,
            seed: None,
            generator: None,
        }
    }

    #[test]
    fn bank_order_and_count() {
        let ds = dataset();
        let plan = manual_plan([&["i2", "i0"], &["i1", "i0"]], [&["i1"], &["i2"]]);
        let bank = train_laws(&ds, &plan, EmbeddingConfig::with_dim(3).unwrap()).unwrap();
        assert_eq!(bank.len(), 4);
        assert_eq!(bank.column_classes(0), vec!["c1", "c1", "c2", "c2"]);
        let ids: Vec<&str> = bank.laws(0).iter().map(|l| l.provenance.instance_id.as_str()).collect();
        assert_eq!(ids, vec!["i0", "i2", "i0", "i1"]);
        for law in bank.laws(0) {
            let n: f64 = law.vector.iter().map(|x| x * x).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bank_csv_round_trip() {
        let ds = dataset();
        let plan = split(ds.index(), 0.34, Some(3)).unwrap();
        let bank = train_laws(&ds, &plan, EmbeddingConfig::new(4, 2).unwrap()).unwrap();
        let text = bank.to_csv().unwrap();
        assert!(text.starts_with("feature,class,instance,eigenvalue,degenerate,v_1,v_2,v_3,v_4\n"));
        let back = LawBank::from_csv(&text, 2, Some(&ds.index().classes)).unwrap();
        assert_eq!(back, bank);
        assert!(LawBank::from_csv(&text, 5, None).is_err());
    }

    #[test]
    fn too_short_names_instance() {
        let ds = Dataset::from_classes(
            vec!["x".into()],
            vec![
                ClassData {
                    label: "a".into(),
                    instances: vec![
                        ("short".into(), vec![ts(vec![1.0, 2.0, 3.0])]),
                        ("long".into(), vec![ts(progression(0.0, 1.0, 10))]),
                    ],
                },
                ClassData {
                    label: "b".into(),
                    instances: vec![
                        ("p".into(), vec![ts(wiggle(1, 10))]),
                        ("q".into(), vec![ts(wiggle(2, 10))]),
                    ],
                },
            ],
        )
        .unwrap();
        let plan = SplitPlan {
            classes: vec![
                ClassSplit { label: "a".into(), train: vec!["short".into()], test: vec!["long".into()] },
                ClassSplit { label: "b".into(), train: vec!["p".into()], test: vec!["q".into()] },
            ],
            test_ratio: None,
            seed: None,
            generator: None,
        };
        let err = train_laws(&ds, &plan, EmbeddingConfig::with_dim(5).unwrap()).unwrap_err();
        match err {
            Error::SeriesTooShort { len: 3, dim: 5, context: Some(c) } => assert!(c.contains("short")),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn table_shape_and_csv() {
        let ds = dataset();
        let plan = split(ds.index(), 0.34, Some(11)).unwrap();
        let bank = train_laws(&ds, &plan, EmbeddingConfig::with_dim(3).unwrap()).unwrap();
        let table = transform_test(&ds, &plan, &bank, SelectCriterion::Rank).unwrap();
        assert_eq!(table.num_rows(), plan.num_test() * 3);
        assert_eq!(table.num_numeric_columns(), 3);
        let text = table.to_csv().unwrap();
        assert!(text.starts_with("law_x_c1,law_x_c2,label,instance_id,row_index\n"));
        let back = TransformedTable::from_csv(&text).unwrap();
        assert_eq!(back.rows, table.rows);
        assert_eq!(back.columns, table.columns);
        assert_eq!(back.dim, 3);
        assert_eq!(table.selections.len(), plan.num_test() * 2);
    }

    #[test]
    fn duplicated_progression_gives_zero_column() {
        // i1 of c1 is a progression; train on it and test on an exact copy
        let mut ds_classes = vec![
            ClassData {
                label: "c1".into(),
                instances: vec![
                    ("train".into(), vec![ts(progression(2.0, 3.0, 15))]),
                    ("copy".into(), vec![ts(progression(2.0, 3.0, 15))]),
                ],
            },
            ClassData {
                label: "c2".into(),
                instances: vec![
                    ("a".into(), vec![ts(wiggle(4, 15))]),
                    ("b".into(), vec![ts(wiggle(5, 15))]),
                ],
            },
        ];
        ds_classes.reverse();
        let ds = Dataset::from_classes(vec!["x".into()], ds_classes).unwrap();
        let plan = manual_plan([&["train"], &["a"]], [&["copy"], &["b"]]);
        let bank = train_laws(&ds, &plan, EmbeddingConfig::with_dim(3).unwrap()).unwrap();
        let table = transform_test(&ds, &plan, &bank, SelectCriterion::Var).unwrap();
        let block = &table.blocks().unwrap()[0];
        assert_eq!(block[0].instance_id, "copy");
        let s = crate::law::gram_matrix(ds.series(0, 0).first().unwrap(), bank.config()).unwrap();
        for row in block.iter() {
            assert!(row.values[0].abs() <= 1e-10 * s.frobenius_norm());
        }
    }

    #[test]
    fn mismatched_bank_rejected() {
        let ds = dataset();
        let plan = split(ds.index(), 0.34, Some(1)).unwrap();
        let bank = train_laws(&ds, &plan, EmbeddingConfig::with_dim(3).unwrap()).unwrap();
        let text = bank.to_csv().unwrap().replace(",c2,", ",zz,");
        let other = LawBank::from_csv(&text, 1, None).unwrap();
        assert!(matches!(
            transform_test(&ds, &plan, &other, SelectCriterion::Rank),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
