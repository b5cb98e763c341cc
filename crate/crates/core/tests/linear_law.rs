mod common;

use common::*;
use llt::law::{
    embed_matrix, gram_matrix, linear_law, smallest_eigpair, EmbeddingConfig, Provenance,
    TimeSeries,
};
use llt::linalg::SymmetricMatrix;
use llt::Error;
use proptest::prelude::*;

fn ts(v: &[f64]) -> TimeSeries {
    TimeSeries::new(v.to_vec()).unwrap()
}

fn prov() -> Provenance {
    Provenance::new("i", "x", "c")
}

/// Series of length `k` with a valid (dim, lag) for it.
fn series_and_config() -> impl Strategy<Value = (Vec<f64>, usize, usize)> {
    (2usize..8)
        .prop_flat_map(|l| (Just(l), 1..=l, l..(l + 60)))
        .prop_flat_map(|(l, g, k)| (prop::collection::vec(-100.0..100.0f64, k), Just(l), Just(g)))
}

#[test]
fn lag_strided_embedding_matches_window_enumeration() {
    let z = [1.0, 2.0, 3.0, 4.0, 5.0];
    let a = embed_matrix(&ts(&z), EmbeddingConfig::new(2, 2).unwrap()).unwrap();
    assert_eq!(a.as_matrix().to_rows(), naive_embed(&z, 2, 2));
    assert_eq!(a.as_matrix().to_rows(), vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
}

#[test]
fn gram_of_short_progression_matches_triple_loop() {
    let z = [1.0, 2.0, 3.0, 4.0];
    let s = gram_matrix(&ts(&z), EmbeddingConfig::new(2, 1).unwrap()).unwrap();
    assert_eq!(s.as_matrix().to_rows(), brute_gram(&naive_embed(&z, 2, 1)));
    assert_eq!(s.as_matrix().to_rows(), vec![vec![14.0, 20.0], vec![20.0, 29.0]]);

    // lag 2, dim 3 over eight samples
    let z = [3.0, -1.0, 4.0, 1.0, -5.0, 9.0, 2.0, -6.0];
    let s = gram_matrix(&ts(&z), EmbeddingConfig::new(3, 2).unwrap()).unwrap();
    assert_eq!(
        s.as_matrix().to_rows(),
        vec![
            vec![50.0, -44.0, -18.0],
            vec![-44.0, 83.0, 9.0],
            vec![-18.0, 9.0, 45.0]
        ]
    );
}

#[test]
fn constant_series_gram() {
    for c in [-2.5, 0.0, 7.0] {
        let s = gram_matrix(&ts(&[c; 4]), EmbeddingConfig::new(2, 1).unwrap()).unwrap();
        let e = 3.0 * c * c;
        assert_eq!(s.as_matrix().to_rows(), vec![vec![e, e], vec![e, e]]);
    }
}

#[test]
fn fixed_four_by_four_matches_reference_decomposition() {
    let rows = vec![
        vec![4.0, -1.5, 0.25, 2.0],
        vec![-1.5, 3.0, 1.0, -0.5],
        vec![0.25, 1.0, 2.5, 0.75],
        vec![2.0, -0.5, 0.75, 1.0],
    ];
    let p = smallest_eigpair(&SymmetricMatrix::from_rows(rows.clone()).unwrap()).unwrap();
    // reference values from an independent LAPACK-backed solver
    let lambda = -0.12248278053493507;
    let v = [
        -0.41060518059056206,
        0.014753995884655646,
        -0.2195443989433033,
        0.884864940072919,
    ];
    assert!((p.value - lambda).abs() < 1e-12);
    assert!(max_abs_diff(&p.vector, &v) < 1e-10);
    let (ov, ovec) = oracle_eigen(&rows);
    assert!((ov[0] - lambda).abs() < 1e-12);
    assert!(max_abs_diff(&sign_normalized(&ovec[0]), &v) < 1e-10);
}

#[test]
fn too_short_series_is_rejected() {
    assert!(matches!(TimeSeries::new(vec![7.0]), Err(Error::SeriesTooShort { .. })));
    let cfg = EmbeddingConfig::new(5, 1).unwrap();
    let err = linear_law(&ts(&[1.0, 2.0, 3.0]), cfg, prov()).unwrap_err();
    assert!(matches!(err, Error::SeriesTooShort { len: 3, dim: 5, .. }));
}

#[test]
fn invalid_configs() {
    assert!(matches!(EmbeddingConfig::new(1, 1), Err(Error::InvalidConfig(_))));
    assert!(matches!(EmbeddingConfig::new(3, 0), Err(Error::InvalidConfig(_))));
    assert!(matches!(EmbeddingConfig::new(3, 4), Err(Error::InvalidConfig(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn embedding_matches_enumeration((z, l, g) in series_and_config()) {
        let a = embed_matrix(&ts(&z), EmbeddingConfig::new(l, g).unwrap()).unwrap();
        prop_assert_eq!(a.as_matrix().to_rows(), naive_embed(&z, l, g));
    }

    #[test]
    fn gram_matches_triple_loop((z, l, g) in series_and_config()) {
        let s = gram_matrix(&ts(&z), EmbeddingConfig::new(l, g).unwrap()).unwrap();
        let b = brute_gram(&naive_embed(&z, l, g));
        for p in 0..l {
            for q in 0..l {
                let got = s[(p, q)];
                prop_assert_eq!(got, s[(q, p)]);
                prop_assert!((got - b[p][q]).abs() <= 1e-12 * b[p][q].abs().max(1.0));
            }
        }
    }

    #[test]
    fn gram_is_positive_semidefinite((z, l, g) in series_and_config()) {
        let s = gram_matrix(&ts(&z), EmbeddingConfig::new(l, g).unwrap()).unwrap();
        let p = smallest_eigpair(&s).unwrap();
        prop_assert!(p.value >= -1e-9 * s.trace());
    }

    #[test]
    fn laws_are_unit_canonical_and_small_residual((z, l, g) in series_and_config()) {
        let cfg = EmbeddingConfig::new(l, g).unwrap();
        let law = linear_law(&ts(&z), cfg, prov()).unwrap();
        let s = brute_gram(&naive_embed(&z, l, g));
        let norm = law.vector.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((norm - 1.0).abs() <= 1e-12);
        prop_assert!(max_abs_diff(&sign_normalized(&law.vector), &law.vector) < 1e-15);
        prop_assert!(residual(&s, law.eigenvalue, &law.vector) <= 1e-9 * frobenius(&s).max(1.0));
        if naive_embed(&z, l, g).len() < l {
            prop_assert!(law.degenerate);
        }
    }

    #[test]
    fn progressions_are_annihilated(
        a in -50.0..50.0f64,
        b in -5.0..5.0f64,
        k in 10usize..120,
        l in 3usize..8,
        g_seed in 0usize..100,
    ) {
        let g = 1 + g_seed % l;
        let z: Vec<f64> = (0..k).map(|t| a + b * t as f64).collect();
        let s = gram_matrix(&ts(&z), EmbeddingConfig::new(l, g).unwrap()).unwrap();
        let p = smallest_eigpair(&s).unwrap();
        prop_assert!(p.value <= 1e-10 * s.frobenius_norm().max(1.0));
    }

    #[test]
    fn scaling_the_series_scales_the_gram(
        (z, l, g) in series_and_config(),
        alpha in prop_oneof![-20.0..-0.05f64, 0.05..20.0f64],
    ) {
        let cfg = EmbeddingConfig::new(l, g).unwrap();
        let scaled: Vec<f64> = z.iter().map(|x| alpha * x).collect();
        let s = gram_matrix(&ts(&z), cfg).unwrap();
        let t = gram_matrix(&ts(&scaled), cfg).unwrap();
        for p in 0..l {
            for q in 0..l {
                let want = alpha * alpha * s[(p, q)];
                prop_assert!((t[(p, q)] - want).abs() <= 1e-12 * (alpha * alpha * s.frobenius_norm()).max(1.0));
            }
        }
        // eigenvectors only have to agree when the smallest eigenvalue is well separated
        let (vals, _) = oracle_eigen(&s.as_matrix().to_rows());
        if vals[1] - vals[0] > 1e-6 * s.frobenius_norm() {
            let u = linear_law(&ts(&z), cfg, prov()).unwrap();
            let w = linear_law(&ts(&scaled), cfg, prov()).unwrap();
            prop_assert!(max_abs_diff(&u.vector, &w.vector) < 1e-7, "{:?} {:?}", u.vector, w.vector);
        }
    }

    #[test]
    fn laws_are_bit_reproducible((z, l, g) in series_and_config()) {
        let cfg = EmbeddingConfig::new(l, g).unwrap();
        let a = linear_law(&ts(&z), cfg, prov()).unwrap();
        let b = linear_law(&ts(&z), cfg, prov()).unwrap();
        prop_assert_eq!(a.eigenvalue.to_bits(), b.eigenvalue.to_bits());
        let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        prop_assert_eq!(bits(&a.vector), bits(&b.vector));
    }

    #[test]
    fn eigenpair_agrees_with_reference_solver(
        n in 2usize..7,
        entries in prop::collection::vec(-10.0..10.0f64, 21),
    ) {
        let mut rows = vec![vec![0.0; n]; n];
        let mut it = entries.iter();
        for i in 0..n {
            for j in i..n {
                let x = *it.next().unwrap();
                rows[i][j] = x;
                rows[j][i] = x;
            }
        }
        let p = smallest_eigpair(&SymmetricMatrix::from_rows(rows.clone()).unwrap()).unwrap();
        let (vals, vecs) = oracle_eigen(&rows);
        let scale = frobenius(&rows).max(1.0);
        prop_assert!((p.value - vals[0]).abs() <= 1e-9 * scale);
        prop_assert!(residual(&rows, p.value, &p.vector) <= 1e-9 * scale);
        if vals[1] - vals[0] > 1e-6 * scale {
            prop_assert!(max_abs_diff(&p.vector, &sign_normalized(&vecs[0])) < 1e-7);
        }
    }
}
