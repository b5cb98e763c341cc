//! Linear laws of a single time series.
//!
//! A series is embedded into a delay matrix `A` (one row per window), its
//! Gram matrix `S = AᵀA` is formed, and the law is the unit vector `v`
//! minimizing `vᵀSv`, i.e. the eigenvector of the smallest eigenvalue of `S`.

mod eigen;
mod embed;

pub use eigen::{
    canonicalize, jacobi_eigen, smallest_eigpair, Eigen, EigenPair, DEGENERACY_TOLERANCE,
    MAX_SWEEPS, OFF_DIAGONAL_TOLERANCE,
};
pub use embed::{embed_matrix, gram_matrix, EmbeddingConfig, EmbeddingMatrix, TimeSeries};

use crate::error::Result;

/// Where a law came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Provenance {
    pub instance_id: String,
    pub feature_id: String,
    pub class_label: String,
}

impl Provenance {
    pub fn new(
        instance_id: impl Into<String>,
        feature_id: impl Into<String>,
        class_label: impl Into<String>,
    ) -> Self {
        Provenance {
            instance_id: instance_id.into(),
            feature_id: feature_id.into(),
            class_label: class_label.into(),
        }
    }
}

/// The minimum-variance direction of one series' delay embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearLaw {
    /// Unit vector of length `dim`, largest-magnitude component positive.
    pub vector: Vec<f64>,
    pub eigenvalue: f64,
    pub provenance: Provenance,
    /// Set when the smallest eigenvalue is repeated or the embedding has
    /// fewer rows than columns.
    pub degenerate: bool,
}

impl LinearLaw {
    pub fn dim(&self) -> usize {
        self.vector.len()
    }
}

pub fn linear_law(
    series: &TimeSeries,
    config: EmbeddingConfig,
    provenance: Provenance,
) -> Result<LinearLaw> {
    let rows = config.check_len(series.len())?;
    let s = gram_matrix(series, config)?;
    let pair = smallest_eigpair(&s)?;
    Ok(LinearLaw {
        vector: pair.vector,
        eigenvalue: pair.value,
        provenance,
        degenerate: pair.degenerate || rows < config.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn law(values: &[f64], dim: usize) -> LinearLaw {
        linear_law(
            &TimeSeries::new(values.to_vec()).unwrap(),
            EmbeddingConfig::with_dim(dim).unwrap(),
            Provenance::new("i", "x", "c"),
        )
        .unwrap()
    }

    #[test]
    fn progression_is_annihilated() {
        let l = law(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0], 3);
        let s = gram_matrix(
            &TimeSeries::new(vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap(),
            EmbeddingConfig::with_dim(3).unwrap(),
        )
        .unwrap();
        assert!(l.eigenvalue.abs() <= 1e-10 * s.frobenius_norm());
        let r6 = 6.0_f64.sqrt();
        let expected = [-1.0 / r6, 2.0 / r6, -1.0 / r6];
        for (a, b) in l.vector.iter().zip(expected) {
            assert!((a - b).abs() < 1e-8, "{:?}", l.vector);
        }
        assert!(!l.degenerate);
    }

    #[test]
    fn constant_series() {
        let l = law(&[2.5; 4], 2);
        assert!(l.eigenvalue.abs() < 1e-12);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((l.vector[0] - h).abs() < 1e-12 && (l.vector[1] + h).abs() < 1e-12);
    }

    #[test]
    fn single_row_embedding_is_degenerate() {
        let l = law(&[1.0, 2.0, 3.0], 3);
        assert!(l.degenerate);
        assert!(l.eigenvalue.abs() < 1e-12);
    }

    #[test]
    fn too_short_propagates() {
        let r = linear_law(
            &TimeSeries::new(vec![1.0, 2.0, 3.0]).unwrap(),
            EmbeddingConfig::with_dim(5).unwrap(),
            Provenance::new("i", "x", "c"),
        );
        assert!(matches!(r, Err(crate::Error::SeriesTooShort { len: 3, dim: 5, .. })));
    }
}
