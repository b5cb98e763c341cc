//! Symmetric eigensolver (cyclic Jacobi) and the minimum eigenpair.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymmetricMatrix};

/// Maximum number of full cyclic sweeps.
pub const MAX_SWEEPS: usize = 100;

/// Converged once the off-diagonal Frobenius norm drops to this fraction of `‖S‖_F`.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-13;

/// Relative gap under which the two smallest eigenvalues count as equal.
pub const DEGENERACY_TOLERANCE: f64 = 1e-10;

/// Components within this distance of the largest magnitude tie for the sign pivot.
const SIGN_TIE_TOLERANCE: f64 = 1e-12;

/// Full eigendecomposition of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct Eigen {
    /// Eigenvalues in the solver's diagonal order (not sorted).
    pub values: Vec<f64>,
    /// Eigenvectors as columns, matching `values`.
    pub vectors: Matrix,
    pub sweeps: usize,
}

/// Smallest eigenvalue with its canonical unit eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
    /// The smallest eigenvalue is (numerically) repeated, so `vector` is one
    /// arbitrary but deterministic member of its eigenspace.
    pub degenerate: bool,
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            acc += a[(p, q)] * a[(p, q)];
        }
    }
    (2.0 * acc).sqrt()
}

/// Cyclic-by-row Jacobi eigendecomposition.
pub fn jacobi_eigen(s: &SymmetricMatrix) -> Result<Eigen> {
    let n = s.order();
    let mut a = s.as_matrix().clone();
    let mut v = Matrix::identity(n);
    let threshold = OFF_DIAGONAL_TOLERANCE * s.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NumericalFailure {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let (c, s) = rotation(a[(p, p)], a[(q, q)], apq);
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }

    let values = (0..n).map(|i| a[(i, i)]).collect();
    Ok(Eigen {
        values,
        vectors: v,
        sweeps,
    })
}

/// Cosine and sine of the rotation zeroing `apq` in `[[app, apq], [apq, aqq]]`.
fn rotation(app: f64, aqq: f64, apq: f64) -> (f64, f64) {
    let theta = (aqq - app) / (2.0 * apq);
    // smaller-angle root of t^2 + 2 t theta - 1 = 0
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    (c, t * c)
}

/// Applies `A <- JᵀAJ` and `V <- VJ` for the rotation `J` in the `(p, q)` plane.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    // keep the working copy exactly symmetric
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        if k != p && k != q {
            a[(k, p)] = a[(p, k)];
            a[(k, q)] = a[(q, k)];
        }
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Normalizes `v` to unit length and flips it so that its largest-magnitude
/// component is positive (lowest index among ties).
pub fn canonicalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    let max = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let pivot = v
        .iter()
        .position(|x| x.abs() >= max - SIGN_TIE_TOLERANCE)
        .unwrap_or(0);
    if v[pivot] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// The minimum eigenvalue of `s` and its canonical eigenvector.
pub fn smallest_eigpair(s: &SymmetricMatrix) -> Result<EigenPair> {
    let n = s.order();
    if n < 2 {
        return Err(Error::DimensionMismatch(format!(
            "eigenproblem needs order >= 2, got {n}"
        )));
    }
    let eig = jacobi_eigen(s)?;

    let mut order: Vec<usize> = (0..n).collect();
    // stable: equal eigenvalues keep diagonal order
    order.sort_by(|&i, &j| eig.values[i].total_cmp(&eig.values[j]));
    let (lo, next) = (order[0], order[1]);

    let scale = s.frobenius_norm().max(1.0);
    let degenerate = (eig.values[next] - eig.values[lo]).abs() <= DEGENERACY_TOLERANCE * scale;

    let mut vector = eig.vectors.column(lo);
    canonicalize(&mut vector);
    Ok(EigenPair {
        value: eig.values[lo],
        vector,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(rows: Vec<Vec<f64>>) -> SymmetricMatrix {
        SymmetricMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn diagonal() {
        let p = smallest_eigpair(&sym(vec![vec![2.0, 0.0], vec![0.0, 1.0]])).unwrap();
        assert_eq!(p.value, 1.0);
        assert_eq!(p.vector, vec![0.0, 1.0]);
        assert!(!p.degenerate);
    }

    #[test]
    fn rank_one() {
        let p = smallest_eigpair(&sym(vec![vec![1.0, 1.0], vec![1.0, 1.0]])).unwrap();
        assert!(p.value.abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((p.vector[0] - h).abs() < 1e-15);
        assert!((p.vector[1] + h).abs() < 1e-15);
    }

    #[test]
    fn zero_matrix_is_degenerate() {
        let p = smallest_eigpair(&SymmetricMatrix::from_upper(3, |_, _| 0.0)).unwrap();
        assert_eq!(p.value, 0.0);
        assert!(p.degenerate);
        assert_eq!(p.vector, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn order_one_rejected() {
        let s = SymmetricMatrix::from_upper(1, |_, _| 1.0);
        assert!(smallest_eigpair(&s).is_err());
    }

    #[test]
    fn eigen_reconstructs() {
        let s = sym(vec![
            vec![4.0, 1.0, -2.0],
            vec![1.0, 3.0, 0.5],
            vec![-2.0, 0.5, 1.0],
        ]);
        let e = jacobi_eigen(&s).unwrap();
        for (k, &lambda) in e.values.iter().enumerate() {
            let v = e.vectors.column(k);
            let sv = s.as_matrix().mul_vec(&v).unwrap();
            let res: f64 = sv.iter().zip(&v).map(|(a, b)| (a - lambda * b).powi(2)).sum();
            // bounded by the stopping threshold on the off-diagonal norm
            assert!(res.sqrt() <= OFF_DIAGONAL_TOLERANCE * s.frobenius_norm(), "{k} {lambda}");
        }
    }

    #[test]
    fn canonical_sign() {
        let mut v = vec![0.3, -0.9, 0.1];
        canonicalize(&mut v);
        assert!(v[1] > 0.0);
        let mut v = vec![-1.0, 1.0];
        canonicalize(&mut v);
        assert!(v[0] > 0.0 && v[1] < 0.0);
    }

    #[test]
    fn huge_theta_rotation_is_finite() {
        let (c, s) = rotation(0.0, 1e300, 1e-200);
        assert!(c.is_finite() && s.is_finite());
        assert!((c * c + s * s - 1.0).abs() < 1e-15);
    }
}
