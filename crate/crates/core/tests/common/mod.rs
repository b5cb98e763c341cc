//! Reference implementations shared by the integration tests. Nothing here
//! calls into the library's numerical code.

#![allow(dead_code)]

use std::path::Path;

use llt::dataset::{ClassData, Dataset};
use llt::law::TimeSeries;
use rand::Rng;

/// Windows of length `l` starting at 0, g, 2g, ... while they fit.
pub fn naive_embed(z: &[f64], l: usize, g: usize) -> Vec<Vec<f64>> {
    let mut rows = Vec::new();
    let mut start = 0;
    while start + l <= z.len() {
        rows.push(z[start..start + l].to_vec());
        start += g;
    }
    rows
}

/// `AᵀA` by the textbook triple loop.
pub fn brute_gram(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let l = a[0].len();
    let mut s = vec![vec![0.0; l]; l];
    for p in 0..l {
        for q in 0..l {
            for row in a {
                s[p][q] += row[p] * row[q];
            }
        }
    }
    s
}

pub fn naive_matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut c = vec![vec![0.0; m]; n];
    for i in 0..n {
        for j in 0..m {
            for t in 0..k {
                c[i][j] += a[i][t] * b[t][j];
            }
        }
    }
    c
}

pub fn frobenius(s: &[Vec<f64>]) -> f64 {
    s.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn residual(s: &[Vec<f64>], lambda: f64, v: &[f64]) -> f64 {
    s.iter()
        .zip(v)
        .map(|(row, vi)| {
            let sv: f64 = row.iter().zip(v).map(|(a, b)| a * b).sum();
            (sv - lambda * vi).powi(2)
        })
        .sum::<f64>()
        .sqrt()
}

/// Classical Jacobi (largest off-diagonal pivot first) run until the
/// off-diagonal norm is below `1e-14 * ‖S‖_F`. Returns eigenvalues in
/// ascending order with matching eigenvector columns.
pub fn oracle_eigen(s: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = s.len();
    let mut a = s.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let target = 1e-14 * frobenius(s);
    for _ in 0..10_000 {
        let mut off = 0.0;
        let (mut p, mut q, mut big) = (0, 1, -1.0);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += a[i][j] * a[i][j];
                    if j > i && a[i][j].abs() > big {
                        big = a[i][j].abs();
                        p = i;
                        q = j;
                    }
                }
            }
        }
        if off.sqrt() <= target {
            break;
        }
        // angle from tan(2 phi) = 2 a_pq / (a_qq - a_pp)
        let phi = 0.5 * (2.0 * a[p][q]).atan2(a[q][q] - a[p][p]);
        let (c, sn) = (phi.cos(), phi.sin());
        for k in 0..n {
            let (akp, akq) = (a[k][p], a[k][q]);
            a[k][p] = c * akp - sn * akq;
            a[k][q] = sn * akp + c * akq;
        }
        for k in 0..n {
            let (apk, aqk) = (a[p][k], a[q][k]);
            a[p][k] = c * apk - sn * aqk;
            a[q][k] = sn * apk + c * aqk;
        }
        for row in v.iter_mut() {
            let (vp, vq) = (row[p], row[q]);
            row[p] = c * vp - sn * vq;
            row[q] = sn * vp + c * vq;
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).unwrap());
    let values = idx.iter().map(|&i| a[i][i]).collect();
    let vectors = idx.iter().map(|&i| v.iter().map(|row| row[i]).collect()).collect();
    (values, vectors)
}

/// Unit length, first component of maximal magnitude made positive.
pub fn sign_normalized(v: &[f64]) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let u: Vec<f64> = v.iter().map(|x| x / norm).collect();
    let max = u.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let pivot = u.iter().position(|x| x.abs() >= max - 1e-12).unwrap();
    if u[pivot] < 0.0 {
        u.iter().map(|x| -x).collect()
    } else {
        u
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn random_symmetric(rng: &mut impl Rng, n: usize) -> Vec<Vec<f64>> {
    let mut s = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(-10.0..10.0);
            s[i][j] = x;
            s[j][i] = x;
        }
    }
    s
}

pub fn sample_variance(x: &[f64]) -> f64 {
    let m = x.iter().sum::<f64>() / x.len() as f64;
    x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (x.len() as f64 - 1.0)
}

pub fn abs_mean(x: &[f64]) -> f64 {
    (x.iter().sum::<f64>() / x.len() as f64).abs()
}

/// Random dataset: `classes` classes, `sizes[c]` instances each, `features`
/// columns of length drawn from `len_range`.
pub fn random_dataset(
    rng: &mut impl Rng,
    sizes: &[usize],
    features: usize,
    len_range: std::ops::RangeInclusive<usize>,
) -> Dataset {
    let names = (0..features).map(|j| format!("f{j}")).collect();
    let classes = sizes
        .iter()
        .enumerate()
        .map(|(c, &n)| ClassData {
            label: format!("c{c}"),
            instances: (0..n)
                .map(|i| {
                    let k = rng.gen_range(len_range.clone());
                    let series = (0..features)
                        .map(|_| {
                            TimeSeries::new((0..k).map(|_| rng.gen_range(-5.0..5.0)).collect())
                                .unwrap()
                        })
                        .collect();
                    (format!("i{i:02}"), series)
                })
                .collect(),
        })
        .collect();
    Dataset::from_classes(names, classes).unwrap()
}

pub fn write_text(path: &Path, text: &str) {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).unwrap();
    }
    std::fs::write(path, text).unwrap();
}
